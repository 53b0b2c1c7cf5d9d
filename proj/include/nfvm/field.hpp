#pragma once

#include <functional>
#include <vector>

#include "nfvm/mesh.hpp"

namespace nfvm {

enum class SchemeKind { CR, Wilson };

/// Global coefficient vector of a discrete solution. Boundary DOF
/// coefficients are exactly zero.
struct SolutionField {
  SchemeKind scheme = SchemeKind::CR;
  std::vector<double> coeffs;
};

/// Test-space field given piecewise on dual pieces: evaluated at (x, y)
/// inside the piece of control volume `dof` within primal cell `cell`.
struct DualPieceField {
  std::function<double(Index cell, Index dof, double x, double y)> value;
  std::function<Vec2(Index cell, Index dof, double x, double y)> grad;
};

}  // namespace nfvm
