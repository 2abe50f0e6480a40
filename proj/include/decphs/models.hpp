#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "decphs/complex.hpp"
#include "decphs/dirac.hpp"
#include "decphs/operators.hpp"

namespace decphs {

// Complex, dual and operators built once and shared by every model on them.
struct DecMesh {
  SimplicialComplex complex;
  DualComplex dual;
  OperatorSet ops;
};

std::shared_ptr<const DecMesh> make_dec_mesh(SimplicialComplex K);

using ScalarField = std::function<double(const Point&)>;
using Signal = std::function<double(double)>;

enum class ModelKind { Telegraph, Wave2D, Diffusion, Maxwell };
const char* to_string(ModelKind kind);

// Energy-storing Dirac block: H gets 0.5 * x' diag(stiffness) x and the
// block's input (co-energy) is weight * stiffness .* x.
struct StorageBlock {
  int block = 0;
  std::string name;
  Eigen::VectorXd stiffness;
};

// Dirac block closed by a linear resistor: input = -weight * conductance .* output.
struct ResistiveBlock {
  int block = 1;
  Eigen::VectorXd conductance;
};

struct PhsModel {
  ModelKind kind = ModelKind::Telegraph;
  std::shared_ptr<const DecMesh> mesh;
  DiracBlocks dirac;
  std::vector<StorageBlock> storage;
  std::optional<ResistiveBlock> resistive;
  std::map<std::string, Eigen::VectorXd> materials;
  // Boundary input cells that are oriented points carry the sign relating
  // a physical point value to the cell value; all others carry +1.
  Eigen::VectorXd port_orientation;

  // dx/dt = A x + B u, y = C x + F u, with u the boundary input cells and
  // y the matching boundary outputs.
  RealSparse A, B, C, F;
  // co-energy inputs of the storage blocks: E x.
  RealSparse E;

  int state_dim() const { return static_cast<int>(A.rows()); }
  int port_count() const { return static_cast<int>(B.cols()); }
  int boundary_weight() const { return dirac.weight[2]; }
  int state_offset(int storage_index) const;
};

// Fills A, B, C, F, E from the Dirac blocks and the storage/resistive data.
void finalize_model(PhsModel& m);

PhsModel assemble_telegraph(std::shared_ptr<const DecMesh> mesh, const ScalarField& capacitance,
                            const ScalarField& inductance);
PhsModel assemble_wave2d(std::shared_ptr<const DecMesh> mesh, double density = 1.0, double stiffness = 1.0);
PhsModel assemble_diffusion(std::shared_ptr<const DecMesh> mesh, double resistance, double capacity = 1.0);
PhsModel assemble_maxwell(std::shared_ptr<const DecMesh> mesh, double permittivity, double permeability);

double hamiltonian(const PhsModel& m, const Eigen::VectorXd& state);
Eigen::VectorXd boundary_output(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input);
// Power entering through the boundary, weight_b * <u, y>.
double boundary_power(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input);
// Power absorbed by the resistive block (zero for lossless models).
double dissipation_rate(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input);
// All three Dirac input blocks stacked, for inspection.
Eigen::VectorXd dirac_inputs(const PhsModel& m, const Eigen::VectorXd& state, const Eigen::VectorXd& input);

// Per boundary input cell: a driving signal (physical point value) or a
// resistive load. Loads close the port with u = -weight_b * R * y.
struct BoundaryPort {
  std::vector<Signal> signal;
  std::vector<std::optional<double>> load;
  Eigen::VectorXd orientation;

  int size() const { return static_cast<int>(signal.size()); }
};

BoundaryPort zero_port(const PhsModel& m);
void set_signal(BoundaryPort& port, int cell, Signal s);
void set_load(BoundaryPort& port, int cell, double resistance);

}  // namespace decphs
