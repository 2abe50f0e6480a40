#include "doctest.h"

#include <random>

#include "decphs/error.hpp"
#include "decphs/mesh_io.hpp"
#include "decphs/models.hpp"

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

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1, 1);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = uni(rng);
  return v;
}

const ScalarField unit = [](const Point&) { return 1.0; };

// dH/dt along the vector field, from the storage stiffness.
double energy_rate(const PhsModel& m, const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
  Eigen::VectorXd grad(m.state_dim());
  for (std::size_t s = 0; s < m.storage.size(); ++s) {
    const int off = m.state_offset(static_cast<int>(s));
    const auto& k = m.storage[s].stiffness;
    grad.segment(off, k.size()) = k.cwiseProduct(x.segment(off, k.size()));
  }
  return grad.dot(m.A * x + m.B * u);
}

std::vector<PhsModel> lossless_models() {
  return {assemble_telegraph(make_dec_mesh(uniform_interval(0, 1.7, 10)), [](const Point& z) { return 1 / (1 + z(0)); },
                             [](const Point& z) { return 2 + z(0); }),
          assemble_wave2d(make_dec_mesh(pentagon_mesh()), 1.3, 0.7),
          assemble_maxwell(make_dec_mesh(two_tet_mesh()), 2.0, 0.5)};
}

}  // namespace

TEST_CASE("telegraph energy matrices") {
  const auto m = assemble_telegraph(make_dec_mesh(uniform_interval(0, 1, 2)), unit, unit);
  REQUIRE(m.storage.size() == 2);
  CHECK((m.storage[0].stiffness - Eigen::Vector2d(2, 2)).norm() < 1e-13);
  CHECK((m.storage[1].stiffness - Eigen::Vector3d(4, 2, 4)).norm() < 1e-13);
  CHECK(m.port_count() == 2);
  CHECK(m.port_orientation == Eigen::Vector2d(-1, 1));
}

TEST_CASE("Hamiltonian values") {
  const double h = 0.25;
  const auto m = assemble_telegraph(make_dec_mesh(uniform_interval(0, 1, 4)), unit, unit);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m.state_dim());
  CHECK(hamiltonian(m, x) == 0.0);
  x.head(4).setConstant(h);
  CHECK(hamiltonian(m, x) == doctest::Approx(0.5));
  std::mt19937_64 rng(4);
  for (const auto& mm : lossless_models()) {
    const Eigen::VectorXd y = random_vector(mm.state_dim(), rng);
    CHECK(hamiltonian(mm, y) > 0);
    CHECK(hamiltonian(mm, 2.0 * y) == doctest::Approx(4.0 * hamiltonian(mm, y)));
  }
  CHECK(kind_of([&] { hamiltonian(m, Eigen::VectorXd::Zero(3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("instantaneous power balance of lossless models") {
  std::mt19937_64 rng(9);
  for (const auto& m : lossless_models()) {
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd x = random_vector(m.state_dim(), rng), u = random_vector(m.port_count(), rng);
      CHECK(std::abs(energy_rate(m, x, u) - boundary_power(m, x, u)) < 1e-12);
    }
    CHECK(boundary_power(m, random_vector(m.state_dim(), rng), Eigen::VectorXd::Zero(m.port_count())) == 0.0);
  }
}

TEST_CASE("telegraph boundary power is current times voltage at the two ends") {
  const auto m = assemble_telegraph(make_dec_mesh(uniform_interval(0, 1, 5)), unit, unit);
  std::mt19937_64 rng(2);
  const Eigen::VectorXd x = random_vector(m.state_dim(), rng);
  const Eigen::Vector2d current(0.3, -0.8);  // physical current into the line at each end
  const Eigen::VectorXd u = current.cwiseProduct(m.port_orientation);
  const Eigen::VectorXd v = boundary_output(m, x, u);
  // e_b(v_n) f(v_n) - e_b(v_0) f(v_0) with f the oriented boundary flow
  CHECK(boundary_power(m, x, u) == doctest::Approx(v(1) * u(1) - v(0) * (-u(0))));
}

TEST_CASE("diffusion reduces to the compartmental model") {
  const auto mesh = make_dec_mesh(uniform_interval(0, 1, 6));
  const double R = 0.7, c = 2.0;
  const auto m = assemble_diffusion(mesh, R, c);
  const RealSparse D = to_real(mesh->ops.D[0]);
  const Eigen::MatrixXd expect = -(1 / c) * Eigen::MatrixXd(RealSparse(D.transpose()) * (R * mesh->ops.M[1]).asDiagonal() * D) *
                                 mesh->ops.M[0].cwiseInverse().asDiagonal();
  CHECK((Eigen::MatrixXd(m.A) - expect).cwiseAbs().maxCoeff() < 1e-10);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m.state_dim());
  const Eigen::VectorXd uniform = mesh->ops.M[0].cwiseProduct(ones);  // constant density
  CHECK((m.A * uniform).norm() < 1e-12);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd x = random_vector(m.state_dim(), rng), u = Eigen::VectorXd::Zero(m.port_count());
    CHECK(energy_rate(m, x, u) == doctest::Approx(-dissipation_rate(m, x, u)));
    CHECK(energy_rate(m, x, u) <= 1e-12);
  }
  CHECK(kind_of([&] { assemble_diffusion(mesh, -1.0); }) == ErrorKind::NegativeR);
}

TEST_CASE("Maxwell induction row is minus the curl of the electric field") {
  const auto mesh = make_dec_mesh(two_tet_mesh());
  const auto m = assemble_maxwell(mesh, 1.5, 1.0);
  const int ne = mesh->complex.count(1), nf = mesh->complex.count(2);
  CHECK(m.state_dim() == ne + nf);
  const Eigen::MatrixXd A(m.A);
  const Eigen::MatrixXd expect =
      -Eigen::MatrixXd(to_real(mesh->ops.D[1])) * m.storage[0].stiffness.asDiagonal();
  CHECK((A.block(ne, 0, nf, ne) - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(A.block(ne, ne, nf, nf).isZero());
}

TEST_CASE("model preconditions") {
  CHECK(kind_of([] { assemble_telegraph(make_dec_mesh(pentagon_mesh()), unit, unit); }) == ErrorKind::NotOneDimensional);
  CHECK(kind_of([] {
          assemble_telegraph(make_dec_mesh(uniform_interval(0, 1, 3)), [](const Point&) { return -1.0; }, unit);
        }) == ErrorKind::NonPositiveMaterial);
  CHECK(kind_of([] { assemble_maxwell(make_dec_mesh(pentagon_mesh()), 1, 1); }) == ErrorKind::NotThreeDimensional);
  CHECK(kind_of([] { assemble_wave2d(make_dec_mesh(two_tet_mesh())); }) == ErrorKind::DimensionMismatch);
  auto m = assemble_wave2d(make_dec_mesh(pentagon_mesh()));
  auto port = zero_port(m);
  CHECK(kind_of([&] { set_load(port, 7, 1.0); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([&] { set_load(port, 0, -1.0); }) == ErrorKind::NegativeR);
}
