#include "decphs/operators.hpp"

#include <iomanip>
#include <ostream>

#include "decphs/error.hpp"

namespace decphs {

IntSparse assemble_derivative(const SimplicialComplex& K, int k) {
  if (k < 0 || k >= K.dim()) fail(ErrorKind::DegreeOutOfRange, "derivative degree " + std::to_string(k));
  std::vector<Eigen::Triplet<int>> trip;
  for (int i = 0; i < K.count(k + 1); ++i)
    for (auto [f, sign] : K.faces(k + 1, i)) trip.emplace_back(i, f, sign);
  IntSparse D(K.count(k + 1), K.count(k));
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

IntSparse assemble_trace(const SimplicialComplex& K, int k) {
  if (k < 0 || k >= K.dim()) fail(ErrorKind::DegreeOutOfRange, "trace degree " + std::to_string(k));
  const auto& b = K.boundary_simplices(k);
  std::vector<Eigen::Triplet<int>> trip;
  for (std::size_t j = 0; j < b.size(); ++j) trip.emplace_back(static_cast<int>(j), b[j], 1);
  IntSparse T(static_cast<int>(b.size()), K.count(k));
  T.setFromTriplets(trip.begin(), trip.end());
  return T;
}

bool exactly_equal(const IntSparse& a, const IntSparse& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const IntSparse d = a - b;
  for (int c = 0; c < d.outerSize(); ++c)
    for (IntSparse::InnerIterator it(d, c); it; ++it)
      if (it.value() != 0) return false;
  return true;
}

std::pair<IntSparse, IntSparse> assemble_dual_derivatives(const SimplicialComplex& K, const DualComplex& dual, int k) {
  if (k < 1 || k > K.dim()) fail(ErrorKind::DegreeOutOfRange, "dual derivative degree " + std::to_string(k));
  IntSparse Di = dual.interior_incidence(k);
  IntSparse Db = dual.boundary_incidence(k);
  const int si = (k % 2) ? -1 : 1;
  const IntSparse Dt = IntSparse(assemble_derivative(K, k - 1).transpose()) * si;
  const IntSparse Tt = IntSparse(assemble_trace(K, k - 1).transpose()) * (-si);
  if (!exactly_equal(Di, Dt) || !exactly_equal(Db, Tt))
    fail(ErrorKind::InconsistentOrientation, "dual cell incidence disagrees with the primal coboundary");
  return {Di, Db};
}

Eigen::VectorXd assemble_hodge(const SimplicialComplex& K, const DualComplex& dual, int k) {
  if (k < 0 || k > K.dim()) fail(ErrorKind::DegreeOutOfRange, "Hodge degree " + std::to_string(k));
  const Eigen::VectorXd& primal = dual.primal_volume(k);
  const Eigen::VectorXd& dv = dual.dual_volume(k);
  if (primal.size() && (primal.minCoeff() <= 0 || dv.minCoeff() <= 0))
    fail(ErrorKind::ZeroVolume, "zero measure in degree " + std::to_string(k));
  return dv.cwiseQuotient(primal);
}

Eigen::VectorXd assemble_boundary_hodge(const SimplicialComplex& K, const DualComplex& dual, int k) {
  if (k < 0 || k >= K.dim()) fail(ErrorKind::DegreeOutOfRange, "boundary Hodge degree " + std::to_string(k));
  const auto& b = K.boundary_simplices(k);
  Eigen::VectorXd out(static_cast<Eigen::Index>(b.size()));
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double p = dual.primal_volume(k)(b[j]);
    const double d = dual.boundary_dual_volume(k)(static_cast<Eigen::Index>(j));
    if (p <= 0 || d <= 0) fail(ErrorKind::ZeroVolume, "zero boundary measure in degree " + std::to_string(k));
    out(static_cast<Eigen::Index>(j)) = d / p;
  }
  return out;
}

RealSparse to_real(const IntSparse& a) { return a.cast<double>(); }

RealSparse assemble_laplacian(const SimplicialComplex& K, const OperatorSet& ops) {
  (void)K;
  const RealSparse D0 = to_real(ops.D.at(0));
  const RealSparse stiff = RealSparse(D0.transpose()) * ops.M.at(1).asDiagonal() * D0;
  return ops.M.at(0).cwiseInverse().asDiagonal() * stiff;
}

OperatorSet assemble_operators(const SimplicialComplex& K, const DualComplex& dual) {
  const int n = K.dim();
  OperatorSet ops;
  ops.n = n;
  ops.D.resize(n);
  ops.T.resize(n);
  ops.Di.resize(n);
  ops.Db.resize(n);
  ops.Mb.resize(n);
  ops.M.resize(n + 1);
  ops.Mhat.resize(n + 1);
  ops.hodge_sign.assign(n + 1, 1);
  for (int k = 0; k < n; ++k) {
    ops.D[k] = assemble_derivative(K, k);
    ops.T[k] = assemble_trace(K, k);
    ops.Mb[k] = assemble_boundary_hodge(K, dual, k);
  }
  for (int k = 1; k <= n; ++k) {
    auto [Di, Db] = assemble_dual_derivatives(K, dual, k);
    ops.Di[n - k] = std::move(Di);
    ops.Db[n - k] = std::move(Db);
  }
  for (int k = 0; k <= n; ++k) {
    ops.M[k] = assemble_hodge(K, dual, k);
    const double s = ((k * (n - k)) % 2) ? -1.0 : 1.0;
    ops.Mhat[n - k] = s * ops.M[k].cwiseInverse();
  }
  return ops;
}

double hodge_condition_number(const Eigen::VectorXd& diag) {
  if (diag.size() == 0) return 1.0;
  const Eigen::VectorXd a = diag.cwiseAbs();
  return a.maxCoeff() / a.minCoeff();
}

void export_triplets(const IntSparse& A, std::ostream& out) {
  out << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
  for (int c = 0; c < A.outerSize(); ++c)
    for (IntSparse::InnerIterator it(A, c); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

void export_triplets(const RealSparse& A, std::ostream& out) {
  out << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n' << std::setprecision(17);
  for (int c = 0; c < A.outerSize(); ++c)
    for (RealSparse::InnerIterator it(A, c); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace decphs
