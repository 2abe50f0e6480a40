#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "decphs/geometry.hpp"

namespace decphs {

using Simplex = std::vector<int>;  // sorted vertex indices

// Oriented manifold-like simplicial complex. Simplices of every dimension are
// stored with sorted vertex tuples; top simplices carry the orientation of
// the tuple they were given as (+1 even permutation, -1 odd), lower ones +1.
class SimplicialComplex {
 public:
  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  int count(int k) const;
  const std::vector<Simplex>& simplices(int k) const;
  const Simplex& simplex(int k, int i) const;
  int orientation(int k, int i) const;
  // Index of a sorted tuple, or -1.
  int find(int k, const Simplex& sorted) const;

  // (face index, incidence sign) for the k-1 faces of k-simplex i.
  const std::vector<std::pair<int, int>>& faces(int k, int i) const;
  // (k+1)-simplices having k-simplex i as a face.
  const std::vector<int>& cofaces(int k, int i) const;

  // Boundary (n-1)-simplices and their induced orientation.
  const std::vector<int>& boundary_faces() const { return boundary_faces_; }
  const std::vector<int>& boundary_face_orientation() const { return boundary_face_sign_; }
  // Primal indices of k-simplices lying on the boundary, ascending.
  const std::vector<int>& boundary_simplices(int k) const;
  // Position of k-simplex i in boundary_simplices(k), or -1.
  int boundary_index(int k, int i) const;
  int boundary_count(int k) const;
  bool is_closed() const { return boundary_faces_.empty(); }

  std::vector<Point> points(int k, int i) const;
  // Top simplices as oriented tuples (inverse of build_complex input).
  std::vector<Simplex> oriented_top_simplices() const;
  double total_volume() const;

  friend SimplicialComplex build_complex(int, std::vector<Point>, const std::vector<Simplex>&);

 private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::vector<int>> orientation_;
  std::vector<std::map<Simplex, int>> index_;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> faces_;
  std::vector<std::vector<std::vector<int>>> cofaces_;
  std::vector<int> boundary_faces_;
  std::vector<int> boundary_face_sign_;
  std::vector<std::vector<int>> boundary_simplices_;
  std::vector<std::vector<int>> boundary_position_;
};

// Tuples of length dim+1 are top simplices; shorter tuples must be faces of
// one of them. Throws NonManifold, InconsistentOrientation, DegenerateSimplex.
SimplicialComplex build_complex(int dim, std::vector<Point> vertices, const std::vector<Simplex>& simplices);

SimplicialComplex uniform_interval(double a, double b, int n_cells);

Point circumcenter(const Simplex& simplex, const std::vector<Point>& vertices);

struct WellCenteredReport {
  bool well_centered = true;
  std::vector<std::pair<int, int>> offending;  // (k, simplex index)
};

WellCenteredReport is_well_centered(const SimplicialComplex& K);

// Elementary piece of a dual cell: the simplex spanned by the circumcenters
// of a primal flag sigma^k < ... < sigma^m, with an orientation sign.
struct DualPiece {
  std::vector<int> flag;  // simplex index per dimension k..m
  int sign = 1;
  double volume = 0.0;
};

struct DualCell {
  std::vector<DualPiece> pieces;
  double volume = 0.0;
};

// Circumcentric dual augmented with the dual of the boundary complex.
class DualComplex {
 public:
  int dim() const { return dim_; }
  int ambient_orientation() const { return ambient_; }

  const std::vector<Point>& circumcenters(int k) const { return centers_.at(k); }
  // Dual of primal k-simplex i: an (n-k)-cell.
  const std::vector<DualCell>& interior_cells(int k) const { return interior_.at(k); }
  // Dual inside the boundary of the j-th boundary k-simplex: an (n-1-k)-cell.
  const std::vector<DualCell>& boundary_cells(int k) const { return boundary_.at(k); }

  const Eigen::VectorXd& primal_volume(int k) const { return primal_volume_.at(k); }
  const Eigen::VectorXd& dual_volume(int k) const { return dual_volume_.at(k); }
  const Eigen::VectorXd& boundary_dual_volume(int k) const { return boundary_volume_.at(k); }
  const Eigen::VectorXd& support_volume(int k) const { return support_volume_.at(k); }

  // Incidence of the dual cells read off the geometry: for primal degree
  // k in 1..n, rows index dual cells of (k-1)-simplices, columns either the
  // dual cells of k-simplices (interior) or boundary dual cells of boundary
  // (k-1)-simplices (boundary).
  const Eigen::SparseMatrix<int>& interior_incidence(int k) const { return interior_incidence_.at(k); }
  const Eigen::SparseMatrix<int>& boundary_incidence(int k) const { return boundary_incidence_.at(k); }

  friend DualComplex build_dual(const SimplicialComplex&, int);

 private:
  int dim_ = 0;
  int ambient_ = 1;
  std::vector<std::vector<Point>> centers_;
  std::vector<std::vector<DualCell>> interior_;
  std::vector<std::vector<DualCell>> boundary_;
  std::vector<Eigen::VectorXd> primal_volume_, dual_volume_, boundary_volume_, support_volume_;
  std::vector<Eigen::SparseMatrix<int>> interior_incidence_, boundary_incidence_;
};

// Throws NotWellCentered. ambient_orientation = -1 reverses every dual sign.
DualComplex build_dual(const SimplicialComplex& K, int ambient_orientation = 1);

}  // namespace decphs
