#include "decphs/dirac.hpp"

#include <random>

#include "decphs/error.hpp"

namespace decphs {

namespace {

int parity(int e) { return (e % 2) ? -1 : 1; }

void add_block(std::vector<Eigen::Triplet<int>>& trip, const IntSparse& B, int row0, int col0, int scale) {
  for (int c = 0; c < B.outerSize(); ++c)
    for (IntSparse::InnerIterator it(B, c); it; ++it)
      trip.emplace_back(row0 + static_cast<int>(it.row()), col0 + static_cast<int>(it.col()), scale * it.value());
}

int block_of(const std::array<PortBlock, 3>& blocks, int index) {
  int off = 0;
  for (int b = 0; b < 3; ++b) {
    if (index < off + blocks[b].size) return b;
    off += blocks[b].size;
  }
  return 2;
}

}  // namespace

const char* to_string(DiracVariant v) { return v == DiracVariant::PrimalState ? "primal_state" : "dual_state"; }

int DiracBlocks::input_offset(int block) const {
  int off = 0;
  for (int b = 0; b < block; ++b) off += inputs[b].size;
  return off;
}

int DiracBlocks::output_offset(int block) const {
  int off = 0;
  for (int b = 0; b < block; ++b) off += outputs[b].size;
  return off;
}

RealSparse DiracBlocks::block(int out_block, int in_block) const {
  return to_real(J).block(output_offset(out_block), input_offset(in_block), outputs[out_block].size, inputs[in_block].size);
}

std::vector<std::pair<int, int>> DiracBlocks::nonzero_blocks() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (block(r, c).nonZeros() > 0) out.emplace_back(r, c);
  return out;
}

DiracBlocks assemble_dirac(const OperatorSet& ops, int p, int q, DiracVariant variant) {
  const int n = ops.n;
  if (p < 1 || q < 1 || p + q != n + 1)
    fail(ErrorKind::BadDegreePair, "p + q must equal n + 1 with p, q >= 1 (got p=" + std::to_string(p) +
                                       ", q=" + std::to_string(q) + ", n=" + std::to_string(n) + ")");
  DiracBlocks d;
  d.n = n;
  d.p = p;
  d.q = q;
  d.variant = variant;
  std::vector<Eigen::Triplet<int>> trip;
  const int sign_pq = parity(p * q + 1);
  if (variant == DiracVariant::PrimalState) {
    const int k = n - p;  // degree of e_p
    const IntSparse& D = ops.D.at(k);
    const IntSparse& T = ops.T.at(k);
    const int Nk = static_cast<int>(D.cols()), Nq = static_cast<int>(D.rows()), Nb = static_cast<int>(T.rows());
    d.inputs = {PortBlock{"e_p", k, Locus::Primal, Nk}, PortBlock{"e_q^", n - q, Locus::DualInterior, Nq},
                PortBlock{"e_b^", n - q, Locus::DualBoundary, Nb}};
    d.outputs = {PortBlock{"f_p^", p, Locus::DualInterior, Nk}, PortBlock{"f_q", q, Locus::Primal, Nq},
                 PortBlock{"f_b", k, Locus::PrimalBoundary, Nb}};
    d.weight = {1, parity(q * (n - q)), parity((n - p) * (n - q))};
    add_block(trip, ops.Di.at(n - q), 0, Nk, sign_pq);
    add_block(trip, ops.Db.at(n - q), 0, Nk + Nq, sign_pq);
    add_block(trip, D, Nk, 0, 1);
    add_block(trip, T, Nk + Nq, 0, parity(p));
  } else {
    const int k = p - 1;  // degree of e_q
    const IntSparse& D = ops.D.at(k);
    const IntSparse& T = ops.T.at(k);
    const int Np = static_cast<int>(D.rows()), Nk = static_cast<int>(D.cols()), Nb = static_cast<int>(T.rows());
    d.inputs = {PortBlock{"e_p^", n - p, Locus::DualInterior, Np}, PortBlock{"e_q", k, Locus::Primal, Nk},
                PortBlock{"f_b^", n - p, Locus::DualBoundary, Nb}};
    d.outputs = {PortBlock{"f_p", p, Locus::Primal, Np}, PortBlock{"f_q^", q, Locus::DualInterior, Nk},
                 PortBlock{"e_b", k, Locus::PrimalBoundary, Nb}};
    d.weight = {parity(p * (n - p)), 1, 1};
    add_block(trip, D, 0, Np, sign_pq);
    add_block(trip, ops.Di.at(n - p), Np, 0, 1);
    add_block(trip, ops.Db.at(n - p), Np, Np + Nk, 1);
    add_block(trip, T, Np + Nk, Np, parity(p));
  }
  const int rows = d.outputs[0].size + d.outputs[1].size + d.outputs[2].size;
  const int cols = d.inputs[0].size + d.inputs[1].size + d.inputs[2].size;
  d.J.resize(rows, cols);
  d.J.setFromTriplets(trip.begin(), trip.end());
  return d;
}

PortVector structure_element(const DiracBlocks& d, const Eigen::VectorXd& input) {
  if (input.size() != d.input_dim()) fail(ErrorKind::DimensionMismatch, "input vector has wrong length");
  return {input, to_real(d.J) * input};
}

std::array<double, 3> power_terms(const DiracBlocks& d, const PortVector& x) {
  if (x.input.size() != d.input_dim() || x.output.size() != d.output_dim())
    fail(ErrorKind::DimensionMismatch, "port vector has wrong length");
  std::array<double, 3> out{};
  for (int b = 0; b < 3; ++b)
    out[b] = d.weight[b] * x.input.segment(d.input_offset(b), d.inputs[b].size)
                               .dot(x.output.segment(d.output_offset(b), d.outputs[b].size));
  return out;
}

double bilinear_pairing(const DiracBlocks& d, const PortVector& x1, const PortVector& x2) {
  for (const auto* x : {&x1, &x2})
    if (x->input.size() != d.input_dim() || x->output.size() != d.output_dim())
      fail(ErrorKind::DimensionMismatch, "port vector has wrong length");
  double sum = 0.0;
  for (int b = 0; b < 3; ++b) {
    const int io = d.input_offset(b), oo = d.output_offset(b), m = d.inputs[b].size;
    sum += d.weight[b] * (x1.input.segment(io, m).dot(x2.output.segment(oo, m)) +
                          x2.input.segment(io, m).dot(x1.output.segment(oo, m)));
  }
  return sum;
}

DiracReport verify_dirac(const DiracBlocks& d, int trials, std::uint64_t seed) {
  DiracReport r;
  r.trials = trials;
  r.input_dim = d.input_dim();
  r.output_dim = d.output_dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto draw = [&] {
    Eigen::VectorXd e(d.input_dim());
    for (int i = 0; i < e.size(); ++i) e(i) = uni(rng);
    return structure_element(d, e);
  };
  for (int t = 0; t < trials; ++t) {
    const PortVector x = draw();
    const PortVector y = draw();
    r.isotropy_residual = std::max(r.isotropy_residual, std::abs(bilinear_pairing(d, x, x)));
    r.cross_residual = std::max(r.cross_residual, std::abs(bilinear_pairing(d, x, y)));
  }
  Eigen::MatrixXd graph(d.output_dim() + d.input_dim(), d.input_dim());
  graph << Eigen::MatrixXd(to_real(d.J)), Eigen::MatrixXd::Identity(d.input_dim(), d.input_dim());
  r.rank = static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(graph).rank());
  return r;
}

DiracBlocks inject_sign_fault(const DiracBlocks& d, int out_block, int in_block, int nth) {
  if (out_block < 0 || out_block > 2 || in_block < 0 || in_block > 2)
    fail(ErrorKind::IndexOutOfRange, "block index must be 0, 1 or 2");
  DiracBlocks faulty = d;
  int seen = 0;
  for (int c = 0; c < faulty.J.outerSize(); ++c)
    for (IntSparse::InnerIterator it(faulty.J, c); it; ++it) {
      if (it.value() == 0) continue;
      if (block_of(d.outputs, static_cast<int>(it.row())) != out_block ||
          block_of(d.inputs, static_cast<int>(it.col())) != in_block)
        continue;
      if (seen++ == nth) {
        it.valueRef() = -it.value();
        return faulty;
      }
    }
  fail(ErrorKind::IndexOutOfRange, "block (" + std::to_string(out_block) + "," + std::to_string(in_block) +
                                       ") has no entry " + std::to_string(nth));
}

DiracSubspace as_subspace(const DiracBlocks& d) {
  DiracSubspace s;
  const int m = d.input_dim();
  s.basis.resize(2 * m, m);
  s.basis << Eigen::MatrixXd(to_real(d.J)), Eigen::MatrixXd::Identity(m, m);
  s.weight.resize(m);
  for (int b = 0; b < 3; ++b) s.weight.segment(d.input_offset(b), d.inputs[b].size).setConstant(d.weight[b]);
  return s;
}

DiracSubspace interconnect(const DiracBlocks& a, const DiracBlocks& b, const std::vector<PortConnection>& links) {
  if (a.input_dim() != a.output_dim() || b.input_dim() != b.output_dim())
    fail(ErrorKind::DimensionMismatch, "structures must be square to interconnect");
  const int na = a.input_dim(), nb = b.input_dim();
  const Eigen::MatrixXd Ja(to_real(a.J)), Jb(to_real(b.J));
  const int ba = a.input_offset(2), bb = b.input_offset(2);
  const int c = static_cast<int>(links.size());

  // Constraints on the free inputs z = (in_a; in_b).
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(2 * c, na + nb);
  std::vector<bool> drop_a(na, false), drop_b(nb, false);
  for (int l = 0; l < c; ++l) {
    const auto& link = links[l];
    if (link.port_a < 0 || link.port_a >= a.inputs[2].size || link.port_b < 0 || link.port_b >= b.inputs[2].size)
      fail(ErrorKind::IndexOutOfRange, "interconnection port index");
    if (link.sign != 1 && link.sign != -1) fail(ErrorKind::InvalidArgument, "interconnection sign must be +1 or -1");
    const int ia = ba + link.port_a, ib = bb + link.port_b;
    C(2 * l, ia) = 1.0;
    C(2 * l, na + ib) = -link.sign;
    C.row(2 * l + 1).head(na) = a.weight[2] * Ja.row(ia);
    C.row(2 * l + 1).tail(nb) = link.sign * b.weight[2] * Jb.row(ib);
    drop_a[ia] = true;
    drop_b[ib] = true;
  }
  const Eigen::MatrixXd N = c ? Eigen::MatrixXd(Eigen::FullPivLU<Eigen::MatrixXd>(C).kernel())
                              : Eigen::MatrixXd::Identity(na + nb, na + nb);

  std::vector<int> keep_a, keep_b;
  for (int i = 0; i < na; ++i)
    if (!drop_a[i]) keep_a.push_back(i);
  for (int i = 0; i < nb; ++i)
    if (!drop_b[i]) keep_b.push_back(i);
  const int m = static_cast<int>(keep_a.size() + keep_b.size());
  const Eigen::MatrixXd out_a = Ja * N.topRows(na), out_b = Jb * N.bottomRows(nb);

  DiracSubspace s;
  s.basis.resize(2 * m, N.cols());
  s.weight.resize(m);
  int r = 0;
  for (int i : keep_a) {
    s.basis.row(r) = out_a.row(i);
    s.basis.row(m + r) = N.row(i);
    s.weight(r++) = a.weight[block_of(a.inputs, i)];
  }
  for (int i : keep_b) {
    s.basis.row(r) = out_b.row(i);
    s.basis.row(m + r) = N.row(na + i);
    s.weight(r++) = b.weight[block_of(b.inputs, i)];
  }
  return s;
}

DiracReport verify_subspace(const DiracSubspace& s) {
  DiracReport r;
  const int m = s.port_dim();
  r.input_dim = m;
  r.output_dim = m;
  const Eigen::MatrixXd F = s.basis.topRows(m), E = s.basis.bottomRows(m);
  const Eigen::MatrixXd G = E.transpose() * s.weight.asDiagonal() * F + F.transpose() * s.weight.asDiagonal() * E;
  r.isotropy_residual = G.diagonal().cwiseAbs().maxCoeff();
  r.cross_residual = G.cwiseAbs().maxCoeff();
  r.rank = static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(s.basis).rank());
  r.trials = static_cast<int>(s.basis.cols());
  return r;
}

}  // namespace decphs
