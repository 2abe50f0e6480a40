#include "doctest.h"

#include <cmath>

#include "decphs/complex.hpp"
#include "decphs/error.hpp"
#include "decphs/mesh_io.hpp"

using namespace decphs;

namespace {

Point p2(double x, double y) { return Eigen::Vector2d(x, y); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

SimplicialComplex equilateral() {
  return build_complex(2, {p2(0, 0), p2(1, 0), p2(0.5, std::sqrt(3.0) / 2)}, {{0, 1, 2}});
}

}  // namespace

TEST_CASE("smallest chain") {
  const auto K = build_complex(1, {Point::Constant(1, 0.0), Point::Constant(1, 0.5), Point::Constant(1, 1.0)},
                               {{0, 1}, {1, 2}});
  CHECK(K.count(0) == 3);
  CHECK(K.count(1) == 2);
  CHECK(K.boundary_simplices(0) == std::vector<int>{0, 2});
  CHECK(!K.is_closed());
}

TEST_CASE("pentagon counts") {
  const auto K = pentagon_mesh();
  CHECK(K.count(0) == 6);
  CHECK(K.count(1) == 10);
  CHECK(K.count(2) == 5);
  CHECK(K.boundary_faces().size() == 5);
  CHECK(K.boundary_count(0) == 5);
  CHECK(K.boundary_index(0, 0) == -1);
}

TEST_CASE("non-manifold inputs are rejected") {
  const std::vector<Point> v{p2(0, 0), p2(1, 0.2), p2(1, -0.2), p2(-1, 0.2), p2(-1, -0.2), p2(3, 3), p2(4, 3)};
  CHECK(kind_of([&] { build_complex(2, v, {{0, 2, 1}, {0, 3, 4}, {5, 6}}); }) == ErrorKind::NonManifold);
  const std::vector<Point> bowtie(v.begin(), v.begin() + 5);
  CHECK(kind_of([&] { build_complex(2, bowtie, {{0, 2, 1}, {0, 3, 4}}); }) == ErrorKind::NonManifold);
  const std::vector<Point> fan{p2(0, 0), p2(1, 0), p2(0.5, 1), p2(0.5, -1), p2(0.6, 0.5)};
  CHECK(kind_of([&] { build_complex(2, fan, {{0, 1, 2}, {1, 0, 3}, {1, 0, 4}}); }) == ErrorKind::NonManifold);
  CHECK(kind_of([&] { build_complex(2, fan, {{0, 1, 2}, {0, 1, 2}}); }) == ErrorKind::NonManifold);
}

TEST_CASE("orientation and degeneracy") {
  const std::vector<Point> v{p2(0, 0), p2(1, 0), p2(0.5, 1), p2(0.5, -1)};
  CHECK_NOTHROW(build_complex(2, v, {{0, 1, 2}, {1, 0, 3}}));
  CHECK(kind_of([&] { build_complex(2, v, {{0, 1, 2}, {0, 1, 3}}); }) == ErrorKind::InconsistentOrientation);
  CHECK(kind_of([&] { build_complex(2, {p2(0, 0), p2(1, 0), p2(2, 0)}, {{0, 1, 2}}); }) ==
        ErrorKind::DegenerateSimplex);
  const auto K = build_complex(2, v, {{0, 1, 2}, {1, 0, 3}});
  CHECK(K.orientation(2, 0) == 1);
  CHECK(K.orientation(2, 1) == -1);
}

TEST_CASE("circumcenters") {
  const std::vector<Point> v{p2(0, 0), p2(2, 0), p2(0, 2), p2(1, std::sqrt(3.0))};
  CHECK((circumcenter({0, 1}, v) - p2(1, 0)).norm() < 1e-14);
  CHECK((circumcenter({0, 1, 2}, v) - p2(1, 1)).norm() < 1e-14);
  const Point centroid = (v[0] + v[1] + v[3]) / 3.0;
  CHECK((circumcenter({0, 1, 3}, v) - centroid).norm() < 1e-14);
  CHECK(kind_of([] { circumcenter({0, 1, 2}, {p2(0, 0), p2(1, 1), p2(2, 2)}); }) == ErrorKind::DegenerateSimplex);
}

TEST_CASE("well-centeredness") {
  CHECK(is_well_centered(equilateral()).well_centered);
  CHECK(is_well_centered(uniform_interval(0, 1, 7)).well_centered);
  const auto R = build_complex(2, {p2(0, 0), p2(2, 0), p2(0, 2)}, {{0, 1, 2}});
  const auto rep = is_well_centered(R);
  CHECK(!rep.well_centered);
  REQUIRE(rep.offending.size() == 1);
  CHECK(rep.offending[0] == std::pair<int, int>{2, 0});
  CHECK(kind_of([&] { build_dual(R); }) == ErrorKind::NotWellCentered);
}

TEST_CASE("1D dual half cells") {
  const auto K = uniform_interval(0, 1, 4);
  const auto dual = build_dual(K);
  const double h = 0.25;
  const Eigen::VectorXd& v = dual.dual_volume(0);
  REQUIRE(v.size() == 5);
  CHECK(v(0) == doctest::Approx(h / 2));
  CHECK(v(2) == doctest::Approx(h));
  CHECK(v(4) == doctest::Approx(h / 2));
  CHECK(v.sum() == doctest::Approx(K.total_volume()).epsilon(1e-12));
  CHECK(dual.dual_volume(1).isOnes());
  // Interior vertex dual runs between the two neighbouring edge midpoints.
  CHECK(dual.circumcenters(1)[1](0) == doctest::Approx(1.5 * h));
  CHECK(dual.interior_cells(0)[2].pieces.size() == 2);
  CHECK(dual.boundary_cells(0).size() == 2);
}

TEST_CASE("2D dual cells") {
  const auto K = pentagon_mesh();
  const auto dual = build_dual(K);
  CHECK(dual.dual_volume(0).sum() == doctest::Approx(K.total_volume()).epsilon(1e-12));
  for (int k = 0; k <= 2; ++k) CHECK(dual.dual_volume(k).minCoeff() > 0);
  // Spoke {0,1}: its dual joins the circumcenters of triangles {0,1,2} and {0,1,5}.
  const int spoke = K.find(1, {0, 1});
  const Point a = dual.circumcenters(2)[K.find(2, {0, 1, 2})], b = dual.circumcenters(2)[K.find(2, {0, 1, 5})];
  CHECK(dual.dual_volume(1)(spoke) == doctest::Approx((a - b).norm()));
  // A boundary vertex's boundary dual is two half rim edges.
  const double rim = (K.vertices()[1] - K.vertices()[2]).norm();
  for (int j = 0; j < 5; ++j) {
    CHECK(dual.boundary_dual_volume(0)(j) == doctest::Approx(rim));
    CHECK(dual.boundary_cells(0)[j].pieces.size() == 2);
  }
}

TEST_CASE("ambient orientation reversal flips dual signs only") {
  for (const auto& K : {pentagon_mesh(), two_tet_mesh(), uniform_interval(0, 2, 5)}) {
    const auto plus = build_dual(K, 1), minus = build_dual(K, -1);
    for (int k = 0; k <= K.dim(); ++k) {
      CHECK(plus.dual_volume(k) == minus.dual_volume(k));
      const auto& a = plus.interior_cells(k);
      const auto& b = minus.interior_cells(k);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].pieces.size(); ++j) {
          CHECK(a[i].pieces[j].flag == b[i].pieces[j].flag);
          CHECK(a[i].pieces[j].sign == -b[i].pieces[j].sign);
        }
    }
  }
}

TEST_CASE("rebuilding from enumerated faces is idempotent") {
  for (const auto& K : {pentagon_mesh(), two_tet_mesh(), ring_mesh()}) {
    const auto again = build_complex(K.dim(), K.vertices(), K.oriented_top_simplices());
    for (int k = 0; k <= K.dim(); ++k) {
      CHECK(again.simplices(k) == K.simplices(k));
      for (int i = 0; i < K.count(k); ++i) CHECK(again.orientation(k, i) == K.orientation(k, i));
    }
    CHECK(again.boundary_faces() == K.boundary_faces());
  }
}

TEST_CASE("closed ring") {
  const auto K = ring_mesh();
  CHECK(K.is_closed());
  CHECK(K.boundary_count(0) == 0);
}
