#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "decphs/cochain.hpp"
#include "decphs/operators.hpp"

namespace decphs {

enum class DiracVariant {
  PrimalState,  // energy variables on the primal complex, boundary effort is the input
  DualState,    // energy variables on the dual complex, boundary flow is the input
};

const char* to_string(DiracVariant v);

struct PortBlock {
  std::string name;
  int degree = 0;
  Locus locus = Locus::Primal;
  int size = 0;
};

// Graph form of a simplicial Dirac structure: outputs = J * inputs, with both
// sides stacked as (p block, q block, boundary block). For PrimalState the
// inputs are (e_p, e_q^, e_b^) and outputs (f_p^, f_q, f_b); for DualState the
// inputs are (e_p^, e_q, f_b^) and outputs (f_p, f_q^, e_b). Input block i is
// paired with output block i, weighted by weight[i].
struct DiracBlocks {
  int n = 0, p = 0, q = 0;
  DiracVariant variant = DiracVariant::PrimalState;
  std::array<PortBlock, 3> inputs;
  std::array<PortBlock, 3> outputs;
  std::array<int, 3> weight{1, 1, 1};
  IntSparse J;

  int input_dim() const { return static_cast<int>(J.cols()); }
  int output_dim() const { return static_cast<int>(J.rows()); }
  int input_offset(int block) const;
  int output_offset(int block) const;
  RealSparse block(int out_block, int in_block) const;
  // (output block, input block) pairs holding nonzero entries.
  std::vector<std::pair<int, int>> nonzero_blocks() const;
};

DiracBlocks assemble_dirac(const OperatorSet& ops, int p, int q, DiracVariant variant);

// Stacked inputs and outputs of one port element.
struct PortVector {
  Eigen::VectorXd input;
  Eigen::VectorXd output;
};

PortVector structure_element(const DiracBlocks& d, const Eigen::VectorXd& input);
double bilinear_pairing(const DiracBlocks& d, const PortVector& x1, const PortVector& x2);
// weight[i] * <input_i, output_i> for each block; the three sum to zero on the structure.
std::array<double, 3> power_terms(const DiracBlocks& d, const PortVector& x);

struct DiracReport {
  int trials = 0;
  double isotropy_residual = 0.0;  // max |pairing(x, x)|
  double cross_residual = 0.0;     // max |pairing(x, y)|
  int rank = 0;
  int output_dim = 0;
  int input_dim = 0;
  double tolerance = 1e-12;
  bool isotropic() const { return isotropy_residual < tolerance && cross_residual < tolerance; }
  bool dimension_ok() const { return rank == output_dim && input_dim == output_dim; }
  bool passed() const { return isotropic() && dimension_ok(); }
};

DiracReport verify_dirac(const DiracBlocks& d, int trials, std::uint64_t seed = 1);

// Flips the sign of the nth stored entry of one nonzero block.
DiracBlocks inject_sign_fault(const DiracBlocks& d, int out_block, int in_block, int nth = 0);

// A structure given by a spanning set: each column stacks (outputs; inputs),
// and coordinate i of the outputs pairs with coordinate i of the inputs
// with sign weight(i).
struct DiracSubspace {
  Eigen::MatrixXd basis;
  Eigen::VectorXd weight;
  int port_dim() const { return static_cast<int>(weight.size()); }
};

DiracSubspace as_subspace(const DiracBlocks& d);

// Joins boundary entry a of the first structure with entry b of the second:
// inputs satisfy in_a = sign * in_b and outputs w_a out_a = -sign * w_b out_b,
// so no power is exchanged at the junction. The joined entries are removed.
struct PortConnection {
  int port_a = 0;
  int port_b = 0;
  int sign = -1;
};

DiracSubspace interconnect(const DiracBlocks& a, const DiracBlocks& b, const std::vector<PortConnection>& links);
DiracReport verify_subspace(const DiracSubspace& s);

}  // namespace decphs
