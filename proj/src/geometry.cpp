#include "decphs/geometry.hpp"

#include <cmath>

#include "decphs/error.hpp"

namespace decphs {

namespace {

Eigen::MatrixXd edge_rows(const std::vector<Point>& pts) {
  const int k = static_cast<int>(pts.size()) - 1;
  Eigen::MatrixXd V(k, pts.front().size());
  for (int i = 0; i < k; ++i) V.row(i) = (pts[i + 1] - pts[0]).transpose();
  return V;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double simplex_volume(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 1.0;
  const Eigen::MatrixXd V = edge_rows(pts);
  const double g = (V * V.transpose()).determinant();
  return std::sqrt(std::max(g, 0.0)) / factorial(static_cast<int>(pts.size()) - 1);
}

double diameter(const std::vector<Point>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

double orientation_det(const std::vector<Point>& columns) {
  if (columns.empty()) return 1.0;
  Eigen::MatrixXd A(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = columns[j];
  return A.determinant();
}

Circumsphere circumsphere(const std::vector<Point>& pts) {
  Circumsphere out;
  const int k = static_cast<int>(pts.size()) - 1;
  if (k == 0) {
    out.center = pts[0];
    out.barycentric = Eigen::VectorXd::Ones(1);
    return out;
  }
  const Eigen::MatrixXd V = edge_rows(pts);
  const Eigen::MatrixXd G = V * V.transpose();
  const double diam = diameter(pts);
  const double vol = simplex_volume(pts);
  if (!(vol > 1e-12 * std::pow(diam, k)))
    fail(ErrorKind::DegenerateSimplex, "simplex has zero measure");
  const Eigen::VectorXd rhs = 0.5 * G.diagonal();
  const Eigen::VectorXd a = G.ldlt().solve(rhs);
  out.center = pts[0] + V.transpose() * a;
  out.barycentric.resize(k + 1);
  out.barycentric(0) = 1.0 - a.sum();
  out.barycentric.tail(k) = a;
  out.radius = (out.center - pts[0]).norm();
  for (const auto& p : pts)
    if (std::abs((out.center - p).norm() - out.radius) > 1e-9 * diam)
      fail(ErrorKind::DegenerateSimplex, "circumcenter solve lost equidistance");
  return out;
}

}  // namespace decphs
