#include "decphs/quadrature.hpp"

#include <array>

#include "decphs/error.hpp"

namespace decphs {

namespace {

struct Node {
  double a, b, w;
};

// Gauss-Legendre on [0, 1].
constexpr std::array<Node, 5> kLine{{
    {0.5, 0, 0.2844444444444444444},
    {0.5 - 0.2692346550528415, 0, 0.2393143352496832},
    {0.5 + 0.2692346550528415, 0, 0.2393143352496832},
    {0.5 - 0.4530899229693320, 0, 0.1184634425280945},
    {0.5 + 0.4530899229693320, 0, 0.1184634425280945},
}};

// Reference triangle (0,0),(1,0),(0,1); weights sum to its area 1/2.
constexpr double kA1 = 0.059715871789770, kB1 = 0.470142064105115, kW1 = 0.132394152788506 / 2;
constexpr double kA2 = 0.797426985353087, kB2 = 0.101286507323456, kW2 = 0.125939180544827 / 2;
constexpr std::array<Node, 7> kTriangle{{
    {1.0 / 3, 1.0 / 3, 0.225 / 2},
    {kB1, kB1, kW1},
    {kA1, kB1, kW1},
    {kB1, kA1, kW1},
    {kB2, kB2, kW2},
    {kA2, kB2, kW2},
    {kB2, kA2, kW2},
}};

}  // namespace

double integrate_simplex(const FormFunction& f, const std::vector<Point>& pts) {
  const int k = static_cast<int>(pts.size()) - 1;
  std::vector<Point> tangents;
  for (int j = 1; j <= k; ++j) tangents.push_back(pts[j] - pts[0]);
  double sum = 0.0;
  switch (k) {
    case 0:
      return f(pts[0], tangents);
    case 1:
      for (const auto& q : kLine) sum += q.w * f(pts[0] + q.a * tangents[0], tangents);
      return sum;
    case 2:
      for (const auto& q : kTriangle) sum += q.w * f(pts[0] + q.a * tangents[0] + q.b * tangents[1], tangents);
      return sum;
    default:
      fail(ErrorKind::QuadratureUnsupported, "no quadrature rule for " + std::to_string(k) + "-cells");
  }
}

}  // namespace decphs
