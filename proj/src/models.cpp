#include "decphs/models.hpp"

#include "decphs/error.hpp"

namespace decphs {

namespace {

using Trip = Eigen::Triplet<double>;

RealSparse from_triplets(int rows, int cols, const std::vector<Trip>& t) {
  RealSparse S(rows, cols);
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

Eigen::VectorXd sample(const ScalarField& f, const std::vector<Point>& at, const std::string& what) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(at.size()));
  for (std::size_t i = 0; i < at.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = f(at[i]);
    if (!(v(static_cast<Eigen::Index>(i)) > 0)) fail(ErrorKind::NonPositiveMaterial, what + " must be positive");
  }
  return v;
}

Eigen::VectorXd port_orientation(const DecMesh& mesh, const DiracBlocks& d) {
  Eigen::VectorXd o = Eigen::VectorXd::Ones(d.inputs[2].size);
  if (d.inputs[2].locus == Locus::DualBoundary && d.inputs[2].degree == 0) {
    const auto& cells = mesh.dual.boundary_cells(mesh.complex.dim() - 1);
    for (int j = 0; j < o.size(); ++j) o(j) = cells[j].pieces.front().sign;
  }
  return o;
}

PhsModel start(ModelKind kind, std::shared_ptr<const DecMesh> mesh, int p, int q, DiracVariant variant) {
  PhsModel m;
  m.kind = kind;
  m.dirac = assemble_dirac(mesh->ops, p, q, variant);
  m.port_orientation = port_orientation(*mesh, m.dirac);
  m.mesh = std::move(mesh);
  return m;
}

}  // namespace

std::shared_ptr<const DecMesh> make_dec_mesh(SimplicialComplex K) {
  auto mesh = std::make_shared<DecMesh>(DecMesh{std::move(K), {}, {}});
  mesh->dual = build_dual(mesh->complex);
  mesh->ops = assemble_operators(mesh->complex, mesh->dual);
  return mesh;
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Telegraph: return "telegraph";
    case ModelKind::Wave2D: return "wave2d";
    case ModelKind::Diffusion: return "diffusion";
    case ModelKind::Maxwell: return "maxwell";
  }
  return "unknown";
}

int PhsModel::state_offset(int storage_index) const {
  int off = 0;
  for (int s = 0; s < storage_index; ++s) off += static_cast<int>(storage[s].stiffness.size());
  return off;
}

void finalize_model(PhsModel& m) {
  const DiracBlocks& d = m.dirac;
  const RealSparse J = to_real(d.J);
  const int nin = d.input_dim(), nout = d.output_dim();
  int nx = 0;
  for (const auto& s : m.storage) {
    if (s.stiffness.size() != d.inputs[s.block].size) fail(ErrorKind::DimensionMismatch, "storage block " + s.name);
    if (s.stiffness.size() && s.stiffness.minCoeff() <= 0) fail(ErrorKind::NonPositiveMaterial, "storage block " + s.name);
    nx += static_cast<int>(s.stiffness.size());
  }
  const int nu = d.inputs[2].size;

  std::vector<Trip> se, sel, pu, ys;
  for (std::size_t s = 0; s < m.storage.size(); ++s) {
    const auto& st = m.storage[s];
    const int off = m.state_offset(static_cast<int>(s));
    for (int i = 0; i < st.stiffness.size(); ++i) {
      se.emplace_back(d.input_offset(st.block) + i, off + i, d.weight[st.block] * st.stiffness(i));
      sel.emplace_back(off + i, d.output_offset(st.block) + i, 1.0);
    }
  }
  for (int j = 0; j < nu; ++j) {
    pu.emplace_back(d.input_offset(2) + j, j, 1.0);
    ys.emplace_back(j, d.output_offset(2) + j, 1.0);
  }
  m.E = from_triplets(nin, nx, se);
  const RealSparse Pu = from_triplets(nin, nu, pu);
  const RealSparse Ss = from_triplets(nx, nout, sel);
  const RealSparse Sy = from_triplets(nu, nout, ys);

  RealSparse G = J;
  if (m.resistive) {
    const auto& r = *m.resistive;
    if (r.conductance.size() != d.inputs[r.block].size) fail(ErrorKind::DimensionMismatch, "resistive block");
    std::vector<Trip> rt;
    for (int i = 0; i < r.conductance.size(); ++i)
      rt.emplace_back(d.input_offset(r.block) + i, d.output_offset(r.block) + i, -d.weight[r.block] * r.conductance(i));
    const RealSparse Rm = from_triplets(nin, nout, rt);
    G = J + RealSparse(J * Rm) * J;
  }
  m.A = -(Ss * G * m.E);
  m.B = -(Ss * G * Pu);
  m.C = Sy * G * m.E;
  m.F = Sy * G * Pu;
  m.A.prune(0.0);
  m.B.prune(0.0);
  m.C.prune(0.0);
  m.F.prune(0.0);
}

PhsModel assemble_telegraph(std::shared_ptr<const DecMesh> mesh, const ScalarField& capacitance,
                            const ScalarField& inductance) {
  if (mesh->complex.dim() != 1) fail(ErrorKind::NotOneDimensional, "telegraph line needs a 1D complex");
  const auto& ops = mesh->ops;
  const Eigen::VectorXd C = sample(capacitance, mesh->dual.circumcenters(1), "capacitance");
  const Eigen::VectorXd L = sample(inductance, mesh->dual.circumcenters(0), "inductance");
  PhsModel m = start(ModelKind::Telegraph, mesh, 1, 1, DiracVariant::DualState);
  m.storage.push_back({0, "charge", ops.M[1].cwiseQuotient(C)});
  m.storage.push_back({1, "flux", L.cwiseProduct(ops.M[0]).cwiseInverse()});
  m.materials["capacitance"] = C;
  m.materials["inductance"] = L;
  finalize_model(m);
  return m;
}

PhsModel assemble_wave2d(std::shared_ptr<const DecMesh> mesh, double density, double stiffness) {
  if (mesh->complex.dim() != 2) fail(ErrorKind::DimensionMismatch, "2D wave needs a 2D complex");
  if (!(density > 0) || !(stiffness > 0)) fail(ErrorKind::NonPositiveMaterial, "density and stiffness must be positive");
  const auto& ops = mesh->ops;
  PhsModel m = start(ModelKind::Wave2D, mesh, 2, 1, DiracVariant::PrimalState);
  m.storage.push_back({0, "momentum", (density * ops.M[0]).cwiseInverse()});
  m.storage.push_back({1, "strain", stiffness * ops.M[1]});
  m.materials["density"] = Eigen::VectorXd::Constant(ops.M[0].size(), density);
  m.materials["stiffness"] = Eigen::VectorXd::Constant(ops.M[1].size(), stiffness);
  finalize_model(m);
  return m;
}

PhsModel assemble_diffusion(std::shared_ptr<const DecMesh> mesh, double resistance, double capacity) {
  if (resistance < 0) fail(ErrorKind::NegativeR, "diffusion coefficient must be nonnegative");
  if (!(capacity > 0)) fail(ErrorKind::NonPositiveMaterial, "capacity must be positive");
  const int n = mesh->complex.dim();
  const auto& ops = mesh->ops;
  PhsModel m = start(ModelKind::Diffusion, mesh, n, 1, DiracVariant::PrimalState);
  m.storage.push_back({0, "density", (capacity * ops.M[0]).cwiseInverse()});
  m.resistive = ResistiveBlock{1, resistance * ops.M[1]};
  m.materials["resistance"] = Eigen::VectorXd::Constant(ops.M[1].size(), resistance);
  m.materials["capacity"] = Eigen::VectorXd::Constant(ops.M[0].size(), capacity);
  finalize_model(m);
  return m;
}

PhsModel assemble_maxwell(std::shared_ptr<const DecMesh> mesh, double permittivity, double permeability) {
  if (mesh->complex.dim() != 3) fail(ErrorKind::NotThreeDimensional, "Maxwell model needs a 3D complex");
  if (!(permittivity > 0) || !(permeability > 0))
    fail(ErrorKind::NonPositiveMaterial, "permittivity and permeability must be positive");
  const auto& ops = mesh->ops;
  PhsModel m = start(ModelKind::Maxwell, mesh, 2, 2, DiracVariant::PrimalState);
  m.storage.push_back({0, "displacement", (permittivity * ops.M[1]).cwiseInverse()});
  m.storage.push_back({1, "induction", ops.M[2] / permeability});
  m.materials["permittivity"] = Eigen::VectorXd::Constant(ops.M[1].size(), permittivity);
  m.materials["permeability"] = Eigen::VectorXd::Constant(ops.M[2].size(), permeability);
  finalize_model(m);
  return m;
}

double hamiltonian(const PhsModel& m, const Eigen::VectorXd& state) {
  if (state.size() != m.state_dim()) fail(ErrorKind::DimensionMismatch, "state has wrong length");
  double h = 0.0;
  for (std::size_t s = 0; s < m.storage.size(); ++s) {
    const auto x = state.segment(m.state_offset(static_cast<int>(s)), m.storage[s].stiffness.size());
    h += 0.5 * x.dot(m.storage[s].stiffness.cwiseProduct(x));
  }
  return h;
}

Eigen::VectorXd boundary_output(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input) {
  if (state.size() != m.state_dim() || input.size() != m.port_count())
    fail(ErrorKind::DimensionMismatch, "state or input has wrong length");
  return m.C * state + m.F * input;
}

double boundary_power(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input) {
  return m.boundary_weight() * input.dot(boundary_output(m, state, input));
}

Eigen::VectorXd dirac_inputs(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input) {
  const DiracBlocks& d = m.dirac;
  Eigen::VectorXd a = m.E * state;
  a.segment(d.input_offset(2), d.inputs[2].size) = input;
  if (m.resistive) {
    const auto& r = *m.resistive;
    const Eigen::VectorXd out = (to_real(d.J) * a).segment(d.output_offset(r.block), d.outputs[r.block].size);
    a.segment(d.input_offset(r.block), d.inputs[r.block].size) = -d.weight[r.block] * r.conductance.cwiseProduct(out);
  }
  return a;
}

double dissipation_rate(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input) {
  if (!m.resistive) return 0.0;
  const auto& r = *m.resistive;
  const DiracBlocks& d = m.dirac;
  Eigen::VectorXd a = m.E * state;
  a.segment(d.input_offset(2), d.inputs[2].size) = input;
  const Eigen::VectorXd out = (to_real(d.J) * a).segment(d.output_offset(r.block), d.outputs[r.block].size);
  return out.dot(r.conductance.cwiseProduct(out));
}

BoundaryPort zero_port(const PhsModel& m) {
  BoundaryPort port;
  port.signal.assign(m.port_count(), Signal{});
  port.load.assign(m.port_count(), std::nullopt);
  port.orientation = m.port_orientation;
  return port;
}

void set_signal(BoundaryPort& port, int cell, Signal s) {
  if (cell < 0 || cell >= port.size()) fail(ErrorKind::IndexOutOfRange, "port cell " + std::to_string(cell));
  port.signal[cell] = std::move(s);
  port.load[cell].reset();
}

void set_load(BoundaryPort& port, int cell, double resistance) {
  if (cell < 0 || cell >= port.size()) fail(ErrorKind::IndexOutOfRange, "port cell " + std::to_string(cell));
  if (resistance < 0) fail(ErrorKind::NegativeR, "load resistance must be nonnegative");
  port.signal[cell] = Signal{};
  port.load[cell] = resistance;
}

}  // namespace decphs
