#include "doctest.h"

#include <sstream>

#include "decphs/error.hpp"
#include "decphs/mesh_io.hpp"
#include "decphs/operators.hpp"

using namespace decphs;

namespace {

Eigen::MatrixXi dense(const IntSparse& A) { return Eigen::MatrixXi(A); }

int sign_pow(int e) { return e % 2 ? -1 : 1; }

std::vector<SimplicialComplex> shipped_meshes() {
  return {uniform_interval(0, 1, 2), uniform_interval(0, 1, 10), uniform_interval(0, 1, 100), pentagon_mesh(),
          two_tet_mesh()};
}

}  // namespace

TEST_CASE("derivative of small chains") {
  Eigen::MatrixXi expect(2, 3);
  expect << -1, 1, 0, 0, -1, 1;
  CHECK(dense(assemble_derivative(uniform_interval(0, 1, 2), 0)) == expect);
  CHECK(dense(assemble_derivative(uniform_interval(0, 1, 1), 0)) == Eigen::RowVector2i(-1, 1));
  CHECK_THROWS_AS(assemble_derivative(uniform_interval(0, 1, 1), 1), Error);
}

TEST_CASE("coboundary squares to zero") {
  for (const auto& K : {pentagon_mesh(), two_tet_mesh()})
    for (int k = 0; k + 1 < K.dim(); ++k) {
      const IntSparse DD = assemble_derivative(K, k + 1) * assemble_derivative(K, k);
      CHECK(dense(DD).isZero());
    }
}

TEST_CASE("trace operators") {
  const auto chain = uniform_interval(0, 1, 4);
  Eigen::MatrixXi t(2, 5);
  t << 1, 0, 0, 0, 0, 0, 0, 0, 0, 1;
  CHECK(dense(assemble_trace(chain, 0)) == t);
  const Eigen::MatrixXi tp = dense(assemble_trace(pentagon_mesh(), 0));
  CHECK(tp.rows() == 5);
  CHECK(tp.col(0).isZero());
  CHECK(tp.rightCols(5) == Eigen::MatrixXi::Identity(5, 5));
  CHECK(assemble_trace(ring_mesh(), 0).rows() == 0);
}

TEST_CASE("dual derivatives are signed transposes") {
  for (const auto& K : shipped_meshes()) {
    const auto dual = build_dual(K);
    const auto ops = assemble_operators(K, dual);
    const int n = K.dim();
    for (int k = 1; k <= n; ++k) {
      const IntSparse Dt = sign_pow(k) * IntSparse(ops.D[k - 1].transpose());
      const IntSparse Tt = sign_pow(k - 1) * IntSparse(ops.T[k - 1].transpose());
      CHECK(exactly_equal(ops.Di[n - k], Dt));
      CHECK(exactly_equal(ops.Db[n - k], Tt));
    }
  }
  const auto K = uniform_interval(0, 1, 3);
  const auto ops = assemble_operators(K, build_dual(K));
  CHECK(dense(ops.Di[0]) == -dense(ops.D[0]).transpose());
  // The boundary feed only touches dual cells of boundary vertices.
  const Eigen::MatrixXi Db = dense(ops.Db[0]);
  CHECK(Db.row(1).isZero());
  CHECK(Db.row(2).isZero());
  CHECK(Db(0, 0) == 1);
  CHECK(Db(3, 1) == 1);
}

TEST_CASE("Hodge stars") {
  const auto K = uniform_interval(0, 1, 4);
  const auto ops = assemble_operators(K, build_dual(K));
  Eigen::VectorXd m0(5);
  m0 << 0.125, 0.25, 0.25, 0.25, 0.125;
  CHECK((ops.M[0] - m0).norm() < 1e-14);
  CHECK((ops.M[1] - Eigen::VectorXd::Constant(4, 4.0)).norm() < 1e-13);
  for (const auto& M : shipped_meshes()) {
    const auto o = assemble_operators(M, build_dual(M));
    const int n = M.dim();
    for (int k = 0; k <= n; ++k) {
      CHECK(o.M[k].minCoeff() > 0);
      const Eigen::VectorXd prod = o.Mhat[n - k].cwiseProduct(o.M[k]);
      CHECK((prod.array() - sign_pow(k * (n - k))).abs().maxCoeff() < 1e-14);
      CHECK(hodge_condition_number(o.M[k]) >= 1.0);
    }
  }
}

TEST_CASE("degree-0 Laplacian") {
  const auto K = uniform_interval(0, 1, 4);
  const auto ops = assemble_operators(K, build_dual(K));
  const Eigen::MatrixXd L(assemble_laplacian(K, ops));
  const double h2 = 1.0 / 16;
  for (int i = 1; i <= 3; ++i) {
    CHECK(L(i, i - 1) == doctest::Approx(-1 / h2));
    CHECK(L(i, i) == doctest::Approx(2 / h2));
    CHECK(L(i, i + 1) == doctest::Approx(-1 / h2));
  }
  // M0-weighted form is symmetric positive semidefinite.
  const Eigen::VectorXd s = ops.M[0].cwiseSqrt();
  const Eigen::MatrixXd S = s.asDiagonal() * L * s.cwiseInverse().asDiagonal();
  CHECK((S - S.transpose()).norm() < 1e-10);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues().minCoeff() > -1e-12);

  const auto R = ring_mesh();
  const auto ring_ops = assemble_operators(R, build_dual(R));
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
  CHECK((assemble_laplacian(R, ring_ops) * ones).norm() < 1e-14);
}

TEST_CASE("triplet export") {
  std::ostringstream out;
  export_triplets(assemble_derivative(uniform_interval(0, 1, 1), 0), out);
  CHECK(out.str() == "1 2 2\n0 0 -1\n0 1 1\n");
}
