#include "decphs/cochain.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "decphs/error.hpp"

namespace decphs {

namespace {

int parity(int e) { return (e % 2) ? -1 : 1; }

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace

const char* to_string(Locus locus) {
  switch (locus) {
    case Locus::Primal: return "primal";
    case Locus::DualInterior: return "dual_interior";
    case Locus::PrimalBoundary: return "primal_boundary";
    case Locus::DualBoundary: return "dual_boundary";
  }
  return "unknown";
}

Locus locus_from_string(const std::string& name) {
  for (Locus l : {Locus::Primal, Locus::DualInterior, Locus::PrimalBoundary, Locus::DualBoundary})
    if (name == to_string(l)) return l;
  fail(ErrorKind::ParseError, "unknown locus '" + name + "'");
}

int cell_count(const SimplicialComplex& K, int degree, Locus locus) {
  const int n = K.dim();
  switch (locus) {
    case Locus::Primal:
    case Locus::DualInterior:
      require(degree >= 0 && degree <= n, ErrorKind::DegreeOutOfRange, "degree " + std::to_string(degree));
      return K.count(locus == Locus::Primal ? degree : n - degree);
    case Locus::PrimalBoundary:
    case Locus::DualBoundary:
      require(degree >= 0 && degree <= n - 1, ErrorKind::DegreeOutOfRange, "boundary degree " + std::to_string(degree));
      return K.boundary_count(locus == Locus::PrimalBoundary ? degree : n - 1 - degree);
  }
  return 0;
}

Cochain::Cochain(const SimplicialComplex& K, int degree, Locus locus)
    : complex_(&K), degree_(degree), locus_(locus), values_(Eigen::VectorXd::Zero(cell_count(K, degree, locus))) {}

Cochain::Cochain(const SimplicialComplex& K, int degree, Locus locus, Eigen::VectorXd values)
    : complex_(&K), degree_(degree), locus_(locus), values_(std::move(values)) {
  require(values_.size() == cell_count(K, degree, locus), ErrorKind::DimensionMismatch,
          "cochain has " + std::to_string(values_.size()) + " values, expected " +
              std::to_string(cell_count(K, degree, locus)));
}

Cochain& Cochain::operator+=(const Cochain& other) {
  require(complex_ == other.complex_ && locus_ == other.locus_, ErrorKind::LocusMismatch, "adding cochains on different cells");
  require(degree_ == other.degree_, ErrorKind::DegreeMismatch, "adding cochains of different degree");
  values_ += other.values_;
  return *this;
}

Cochain& Cochain::operator*=(double s) {
  values_ *= s;
  return *this;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
Cochain operator*(double s, Cochain a) { return a *= s; }

double evaluate(const Cochain& alpha, const Chain& chain) {
  double sum = 0.0;
  for (const auto& t : chain) {
    require(t.cell >= 0 && t.cell < alpha.size(), ErrorKind::IndexOutOfRange, "chain cell " + std::to_string(t.cell));
    sum += t.coefficient * alpha.values()(t.cell);
  }
  return sum;
}

Cochain discretize(const FormFunction& f, int degree, const SimplicialComplex& K, const DualComplex& dual, Locus locus) {
  Cochain out(K, degree, locus);
  const int n = K.dim();
  auto dual_integral = [&](const DualCell& cell, int k0) {
    double v = 0.0;
    for (const auto& piece : cell.pieces) {
      std::vector<Point> pts;
      for (std::size_t j = 0; j < piece.flag.size(); ++j) pts.push_back(dual.circumcenters(k0 + static_cast<int>(j))[piece.flag[j]]);
      v += piece.sign * integrate_simplex(f, pts);
    }
    return v;
  };
  auto primal_integral = [&](int i) {
    auto pts = K.points(degree, i);
    if (degree >= 1 && K.orientation(degree, i) < 0) std::swap(pts[0], pts[1]);
    return integrate_simplex(f, pts);
  };
  switch (locus) {
    case Locus::Primal:
      for (int i = 0; i < out.size(); ++i) out.values()(i) = primal_integral(i);
      break;
    case Locus::PrimalBoundary:
      for (int j = 0; j < out.size(); ++j) out.values()(j) = primal_integral(K.boundary_simplices(degree)[j]);
      break;
    case Locus::DualInterior:
      for (int i = 0; i < out.size(); ++i) out.values()(i) = dual_integral(dual.interior_cells(n - degree)[i], n - degree);
      break;
    case Locus::DualBoundary:
      for (int j = 0; j < out.size(); ++j)
        out.values()(j) = dual_integral(dual.boundary_cells(n - 1 - degree)[j], n - 1 - degree);
      break;
  }
  return out;
}

double wedge_pair(const Cochain& primal, const Cochain& dual) {
  require(primal.locus() == Locus::Primal && dual.locus() == Locus::DualInterior, ErrorKind::LocusMismatch,
          "wedge pairs a primal with an interior dual cochain");
  require(&primal.complex() == &dual.complex(), ErrorKind::LocusMismatch, "cochains live on different complexes");
  require(primal.degree() + dual.degree() == primal.complex().dim(), ErrorKind::DegreeMismatch, "degrees must sum to n");
  return primal.values().dot(dual.values());
}

double wedge_pair_reversed(const Cochain& dual, const Cochain& primal) {
  const int k = primal.degree();
  return parity(k * (primal.complex().dim() - k)) * wedge_pair(primal, dual);
}

double boundary_wedge_pair(const Cochain& primal_boundary, const Cochain& dual_boundary) {
  require(primal_boundary.locus() == Locus::PrimalBoundary && dual_boundary.locus() == Locus::DualBoundary,
          ErrorKind::LocusMismatch, "boundary wedge pairs boundary cochains");
  require(&primal_boundary.complex() == &dual_boundary.complex(), ErrorKind::LocusMismatch,
          "cochains live on different complexes");
  require(primal_boundary.degree() + dual_boundary.degree() == primal_boundary.complex().dim() - 1,
          ErrorKind::DegreeMismatch, "boundary degrees must sum to n-1");
  return primal_boundary.values().dot(dual_boundary.values());
}

double summation_by_parts_residual(const OperatorSet& ops, const Cochain& e_p, const Cochain& e_q, const Cochain& e_b) {
  const int n = ops.n;
  const int k = e_p.degree() + 1;
  require(e_p.locus() == Locus::Primal && e_q.locus() == Locus::DualInterior && e_b.locus() == Locus::DualBoundary,
          ErrorKind::LocusMismatch, "expected primal, interior dual and boundary dual cochains");
  require(k >= 1 && k <= n && e_q.degree() == n - k && e_b.degree() == n - k, ErrorKind::DegreeMismatch,
          "expected degrees (k-1, n-k, n-k)");
  const RealSparse D = to_real(ops.D.at(k - 1));
  const RealSparse T = to_real(ops.T.at(k - 1));
  const RealSparse Di = to_real(ops.Di.at(n - k));
  const RealSparse Db = to_real(ops.Db.at(n - k));
  const Eigen::VectorXd& ep = e_p.values();
  const Eigen::VectorXd& eq = e_q.values();
  const Eigen::VectorXd& eb = e_b.values();
  const double volume = (D * ep).dot(eq);
  const double adjoint = parity(k - 1) * ep.dot(Di * eq + Db * eb);
  const double boundary = (T * ep).dot(eb);
  return std::abs(volume + adjoint - boundary);
}

void write_csv(const Cochain& c, std::ostream& out) {
  out << "# degree=" << c.degree() << " locus=" << to_string(c.locus()) << '\n';
  out << "cell,value\n" << std::setprecision(17);
  for (int i = 0; i < c.size(); ++i) out << i << ',' << c.values()(i) << '\n';
}

Cochain read_csv(const SimplicialComplex& K, std::istream& in) {
  std::string line;
  int degree = -1;
  std::string locus;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "# degree=%d", &degree) != 1 ||
      line.find("locus=") == std::string::npos)
    fail(ErrorKind::ParseError, "line 1: expected '# degree=<k> locus=<name>'");
  locus = line.substr(line.find("locus=") + 6);
  while (!locus.empty() && std::isspace(static_cast<unsigned char>(locus.back()))) locus.pop_back();
  Cochain c(K, degree, locus_from_string(locus));
  std::getline(in, line);
  int lineno = 2;
  std::vector<bool> seen(c.size(), false);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    int cell;
    char comma;
    double value;
    if (!(row >> cell >> comma >> value) || comma != ',')
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'cell,value'");
    if (cell < 0 || cell >= c.size()) fail(ErrorKind::IndexOutOfRange, "line " + std::to_string(lineno) + ": cell index");
    c.values()(cell) = value;
    seen[cell] = true;
  }
  for (bool s : seen)
    if (!s) fail(ErrorKind::ParseError, "cochain file does not cover every cell");
  return c;
}

}  // namespace decphs
