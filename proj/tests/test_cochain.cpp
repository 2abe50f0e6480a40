#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "decphs/cochain.hpp"
#include "decphs/error.hpp"
#include "decphs/mesh_io.hpp"
#include "decphs/operators.hpp"

using namespace decphs;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

// 1-form density g(z) dz on a 1D complex.
FormFunction line_density(std::function<double(double)> g) {
  return [g](const Point& x, std::span<const Point> t) { return g(x(0)) * t[0](0); };
}

Cochain random_cochain(const SimplicialComplex& K, int degree, Locus locus, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1, 1);
  Eigen::VectorXd v(cell_count(K, degree, locus));
  for (int i = 0; i < v.size(); ++i) v(i) = uni(rng);
  return Cochain(K, degree, locus, v);
}

}  // namespace

TEST_CASE("evaluate on chains") {
  const auto K = uniform_interval(0, 1, 2);
  const Cochain a(K, 1, Locus::Primal, Eigen::Vector2d(2, 3));
  CHECK(evaluate(a, {{1, 0}, {-1, 1}}) == -1.0);
  CHECK(evaluate(a, {}) == 0.0);
  CHECK(kind_of([&] { evaluate(a, {{1, 2}}); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("cochain arithmetic checks its operands") {
  const auto K = pentagon_mesh();
  const Cochain a(K, 1, Locus::Primal), b(K, 1, Locus::DualInterior), c(K, 2, Locus::Primal);
  CHECK(kind_of([&] { a + b; }) == ErrorKind::LocusMismatch);
  CHECK(kind_of([&] { a + c; }) == ErrorKind::DegreeMismatch);
  CHECK(kind_of([&] { Cochain(K, 1, Locus::Primal, Eigen::VectorXd::Zero(3)); }) == ErrorKind::DimensionMismatch);
  Cochain d(K, 0, Locus::Primal, Eigen::VectorXd::Ones(6));
  d += 2.0 * d;
  CHECK(d.values().isConstant(3.0));
}

TEST_CASE("discretization of line densities") {
  const auto one = uniform_interval(0, 0.3, 1);
  CHECK(discretize(line_density([](double) { return 1.0; }), 1, one, build_dual(one), Locus::Primal).values()(0) ==
        doctest::Approx(0.3).epsilon(1e-14));
  const auto unit = uniform_interval(0, 1, 1);
  CHECK(discretize(line_density([](double z) { return z; }), 1, unit, build_dual(unit), Locus::Primal).values()(0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  const auto halves = uniform_interval(0, std::acos(-1.0), 2);
  const Cochain s = discretize(line_density([](double z) { return std::sin(z); }), 1, halves, build_dual(halves), Locus::Primal);
  CHECK(std::abs(s.values().sum() - 2.0) < 1e-8);
}

TEST_CASE("discrete Stokes on primal edges") {
  const auto K = pentagon_mesh();
  const auto dual = build_dual(K);
  const auto ops = assemble_operators(K, dual);
  const FormFunction g = [](const Point& x, std::span<const Point>) { return x(0) * x(0) + 3 * x(1) - x(0) * x(1); };
  const FormFunction dg = [](const Point& x, std::span<const Point> t) {
    return (2 * x(0) - x(1)) * t[0](0) + (3 - x(0)) * t[0](1);
  };
  const Eigen::VectorXd lhs = to_real(ops.D[0]) * discretize(g, 0, K, dual, Locus::Primal).values();
  const Eigen::VectorXd rhs = discretize(dg, 1, K, dual, Locus::Primal).values();
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("primal-dual wedge") {
  const auto K = pentagon_mesh();
  std::mt19937_64 rng(11);
  const Cochain a = random_cochain(K, 1, Locus::Primal, rng), b = random_cochain(K, 1, Locus::DualInterior, rng);
  CHECK(wedge_pair(a, b) == doctest::Approx(a.values().dot(b.values())));
  CHECK(wedge_pair(a, Cochain(K, 1, Locus::DualInterior)) == 0.0);
  CHECK(wedge_pair_reversed(b, a) == doctest::Approx(-wedge_pair(a, b)));
  const Cochain v = random_cochain(K, 0, Locus::Primal, rng), w = random_cochain(K, 2, Locus::DualInterior, rng);
  CHECK(wedge_pair_reversed(w, v) == doctest::Approx(wedge_pair(v, w)));
  const auto T = two_tet_mesh();
  const Cochain e = random_cochain(T, 1, Locus::Primal, rng), f = random_cochain(T, 2, Locus::DualInterior, rng);
  CHECK(wedge_pair_reversed(f, e) == doctest::Approx(wedge_pair(e, f)));
  CHECK(kind_of([&] { wedge_pair(a, w); }) == ErrorKind::DegreeMismatch);
  CHECK(kind_of([&] { wedge_pair(b, a); }) == ErrorKind::LocusMismatch);
}

TEST_CASE("boundary wedge on a line carries the end orientations") {
  const auto K = uniform_interval(0, 1, 5);
  const auto dual = build_dual(K);
  const Cochain e(K, 0, Locus::PrimalBoundary, Eigen::Vector2d(2.0, 5.0));
  const FormFunction f = [](const Point& x, std::span<const Point>) { return 1.0 + 3.0 * x(0); };
  const Cochain fb = discretize(f, 0, K, dual, Locus::DualBoundary);
  // e(right) f(right) - e(left) f(left)
  CHECK(boundary_wedge_pair(e, fb) == doctest::Approx(5.0 * 4.0 - 2.0 * 1.0));
  CHECK(boundary_wedge_pair(Cochain(K, 0, Locus::PrimalBoundary), fb) == 0.0);
}

TEST_CASE("summation by parts") {
  std::mt19937_64 rng(5);
  for (const auto& K : {uniform_interval(0, 1, 10), pentagon_mesh(), two_tet_mesh()}) {
    const auto dual = build_dual(K);
    const auto ops = assemble_operators(K, dual);
    const int n = K.dim();
    for (int k = 1; k <= n; ++k) {
      for (int t = 0; t < 50; ++t) {
        const Cochain ep = random_cochain(K, k - 1, Locus::Primal, rng);
        const Cochain eq = random_cochain(K, n - k, Locus::DualInterior, rng);
        const Cochain eb = random_cochain(K, n - k, Locus::DualBoundary, rng);
        CHECK(summation_by_parts_residual(ops, ep, eq, eb) < 1e-12);
      }
      CHECK(summation_by_parts_residual(ops, Cochain(K, k - 1, Locus::Primal), Cochain(K, n - k, Locus::DualInterior),
                                        Cochain(K, n - k, Locus::DualBoundary)) == 0.0);
    }
    if (n > 1)
      CHECK(kind_of([&] {
              summation_by_parts_residual(ops, Cochain(K, 0, Locus::Primal), Cochain(K, 0, Locus::DualInterior),
                                          Cochain(K, n - 1, Locus::DualBoundary));
            }) == ErrorKind::DegreeMismatch);
  }
}

TEST_CASE("csv round trip") {
  const auto K = pentagon_mesh();
  std::mt19937_64 rng(3);
  const Cochain c = random_cochain(K, 1, Locus::DualInterior, rng);
  std::stringstream ss;
  write_csv(c, ss);
  const Cochain back = read_csv(K, ss);
  CHECK(back.degree() == 1);
  CHECK(back.locus() == Locus::DualInterior);
  CHECK(back.values() == c.values());
  std::istringstream bad("degree 1\n");
  CHECK(kind_of([&] { read_csv(K, bad); }) == ErrorKind::ParseError);
}
