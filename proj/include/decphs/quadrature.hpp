#pragma once

#include <functional>
#include <span>
#include <vector>

#include "decphs/geometry.hpp"

namespace decphs {

// A differential k-form given pointwise: value of the form at x on the k
// tangent vectors.
using FormFunction = std::function<double(const Point& x, std::span<const Point> tangents)>;

// Integral of the form over the affine simplex pts[0..k], oriented by the
// tangents pts[j] - pts[0]. Supports k <= 2 (5-point Gauss-Legendre on
// edges, 7-point degree-5 rule on triangles); larger k throws
// QuadratureUnsupported.
double integrate_simplex(const FormFunction& f, const std::vector<Point>& pts);

}  // namespace decphs
