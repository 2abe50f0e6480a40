#pragma once

#include <vector>

#include <Eigen/Dense>

namespace decphs {

using Point = Eigen::VectorXd;

// Unsigned k-volume of the simplex spanned by k+1 points (a point has measure 1).
double simplex_volume(const std::vector<Point>& pts);

// Largest pairwise distance between the points.
double diameter(const std::vector<Point>& pts);

// Determinant of the matrix whose columns are the given vectors.
double orientation_det(const std::vector<Point>& columns);

struct Circumsphere {
  Point center;
  Eigen::VectorXd barycentric;  // coordinates of the center w.r.t. the points
  double radius = 0.0;
};

// Circumsphere of a simplex restricted to its own affine hull.
// Throws DegenerateSimplex when the points are affinely dependent.
Circumsphere circumsphere(const std::vector<Point>& pts);

}  // namespace decphs
