#pragma once

#include <array>
#include <functional>
#include <optional>

#include "nfvm/geometry.hpp"

namespace nfvm {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Exact-solution callbacks for manufactured tests: value, gradient and the
/// two pure second derivatives (needed by the Wilson moment functionals).
struct ExactSolution {
  std::function<double(double, double)> value;
  std::function<Vec2(double, double)> gradient;
  std::function<double(double, double)> dxx;
  std::function<double(double, double)> dyy;
};

/// Data of the Dirichlet problem  -div(a grad u) + b u = f  on a rectangle,
/// u = 0 on the boundary.
struct EllipticProblem {
  std::function<Matrix2(double, double)> diffusion;
  std::function<double(double, double)> reaction;
  std::function<double(double, double)> source;
  Rect domain;
  std::optional<ExactSolution> exact;

  bool has_identity_diffusion_zero_reaction(int samples_per_axis = 7) const;
};

/// Poisson problem on the unit square with f = 2(x^2+y^2-x-y) and exact
/// solution u = -x(x-1)y(y-1).
EllipticProblem benchmark_poisson_problem();

}  // namespace nfvm
