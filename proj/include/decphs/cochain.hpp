#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "decphs/complex.hpp"
#include "decphs/operators.hpp"
#include "decphs/quadrature.hpp"

namespace decphs {

enum class Locus { Primal, DualInterior, PrimalBoundary, DualBoundary };

const char* to_string(Locus locus);
Locus locus_from_string(const std::string& name);

// Number of cells carrying a cochain of the given degree and locus. Dual
// degrees count the dimension of the dual cell.
int cell_count(const SimplicialComplex& K, int degree, Locus locus);

class Cochain {
 public:
  Cochain(const SimplicialComplex& K, int degree, Locus locus);
  Cochain(const SimplicialComplex& K, int degree, Locus locus, Eigen::VectorXd values);

  int degree() const { return degree_; }
  Locus locus() const { return locus_; }
  const SimplicialComplex& complex() const { return *complex_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  Cochain& operator+=(const Cochain& other);
  Cochain& operator*=(double s);

 private:
  const SimplicialComplex* complex_;
  int degree_;
  Locus locus_;
  Eigen::VectorXd values_;
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator*(double s, Cochain a);

struct ChainTerm {
  int coefficient;
  int cell;
};
using Chain = std::vector<ChainTerm>;

double evaluate(const Cochain& alpha, const Chain& chain);

// Integrates the form over every cell of the locus, respecting orientation.
Cochain discretize(const FormFunction& f, int degree, const SimplicialComplex& K, const DualComplex& dual, Locus locus);

double wedge_pair(const Cochain& primal, const Cochain& dual);
double wedge_pair_reversed(const Cochain& dual, const Cochain& primal);
double boundary_wedge_pair(const Cochain& primal_boundary, const Cochain& dual_boundary);

// e_p: primal (k-1)-cochain, e_q: dual (n-k)-cochain, e_b: boundary dual (n-k)-cochain.
double summation_by_parts_residual(const OperatorSet& ops, const Cochain& e_p, const Cochain& e_q, const Cochain& e_b);

void write_csv(const Cochain& c, std::ostream& out);
Cochain read_csv(const SimplicialComplex& K, std::istream& in);

}  // namespace decphs
