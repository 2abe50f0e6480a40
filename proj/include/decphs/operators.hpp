#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "decphs/complex.hpp"

namespace decphs {

using IntSparse = Eigen::SparseMatrix<int>;
using RealSparse = Eigen::SparseMatrix<double>;

// Matrix form of every discrete operator on one complex. Dual derivatives are
// indexed by the degree of the dual form they act on: Di[m] maps dual
// m-cochains (values on duals of (n-m)-simplices) to dual (m+1)-cochains, and
// Db[m] feeds the matching boundary dual m-cochain into the same result.
struct OperatorSet {
  int n = 0;
  std::vector<IntSparse> D;   // D[k]: N_{k+1} x N_k, k = 0..n-1
  std::vector<IntSparse> T;   // T[k]: Nb_k x N_k, k = 0..n-1
  std::vector<IntSparse> Di;  // Di[m]: N_{n-m-1} x N_{n-m}, m = 0..n-1
  std::vector<IntSparse> Db;  // Db[m]: N_{n-m-1} x Nb_{n-m-1}
  std::vector<Eigen::VectorXd> M;     // M[k] = |dual cell| / |simplex|, k = 0..n
  std::vector<Eigen::VectorXd> Mhat;  // Mhat[m] = (-1)^{k(n-k)} / M[k] with m = n-k
  std::vector<Eigen::VectorXd> Mb;    // boundary Hodge, k = 0..n-1
  std::vector<int> hodge_sign;        // normalized to +1 for every degree
};

IntSparse assemble_derivative(const SimplicialComplex& K, int k);
IntSparse assemble_trace(const SimplicialComplex& K, int k);
// For primal degree k in 1..n: (Di[n-k], Db[n-k]) read off the dual cell
// boundaries. Throws InconsistentOrientation if they do not reproduce the
// transposes of D[k-1] and T[k-1].
std::pair<IntSparse, IntSparse> assemble_dual_derivatives(const SimplicialComplex& K, const DualComplex& dual, int k);
Eigen::VectorXd assemble_hodge(const SimplicialComplex& K, const DualComplex& dual, int k);
Eigen::VectorXd assemble_boundary_hodge(const SimplicialComplex& K, const DualComplex& dual, int k);
// Degree-0 Laplacian M0^{-1} D0^T M1 D0 (zero boundary input).
RealSparse assemble_laplacian(const SimplicialComplex& K, const OperatorSet& ops);
OperatorSet assemble_operators(const SimplicialComplex& K, const DualComplex& dual);

double hodge_condition_number(const Eigen::VectorXd& diag);
bool exactly_equal(const IntSparse& a, const IntSparse& b);
RealSparse to_real(const IntSparse& a);

// One "row col value" line per stored entry, preceded by "rows cols nnz".
void export_triplets(const IntSparse& A, std::ostream& out);
void export_triplets(const RealSparse& A, std::ostream& out);

}  // namespace decphs
