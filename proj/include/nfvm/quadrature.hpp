#pragma once

#include <functional>
#include <vector>

#include "nfvm/geometry.hpp"

namespace nfvm {

/// Nodes and weights in reference coordinates with a known exactness degree.
struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

/// Gauss-Legendre rule on [-1,1] exact for polynomials of the given degree.
const QuadratureRule& segment_rule(int degree);

/// Rule on the unit triangle (0,0),(1,0),(0,1) exact for the given degree.
/// Degrees 1..6 use fixed symmetric rules; higher degrees fall back to a
/// collapsed tensor-product construction.
const QuadratureRule& triangle_rule(int degree);

using ScalarFn = std::function<double(double, double)>;

/// Gauss-Legendre integral of f along the segment [a,b].
double integrate_segment(const ScalarFn& f, Vec2 a, Vec2 b, int degree);

/// Integral of f over a triangle given by its corners.
double integrate_triangle(const ScalarFn& f, Vec2 a, Vec2 b, Vec2 c, int degree);

/// Integral of f over a simple convex CCW polygon, by fan triangulation
/// from the first vertex.
double integrate_polygon(const ScalarFn& f, const Polygon& poly, int degree);

}  // namespace nfvm
