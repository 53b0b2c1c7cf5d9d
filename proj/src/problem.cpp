#include "nfvm/problem.hpp"

#include <cmath>

namespace nfvm {

bool EllipticProblem::has_identity_diffusion_zero_reaction(int samples_per_axis) const {
  const double tol = 1e-14;
  for (int i = 0; i < samples_per_axis; ++i) {
    for (int j = 0; j < samples_per_axis; ++j) {
      const double x = domain.xmin + (i + 0.5) / samples_per_axis * domain.width();
      const double y = domain.ymin + (j + 0.5) / samples_per_axis * domain.height();
      const Matrix2 a = diffusion(x, y);
      if (std::abs(a[0][0] - 1.0) > tol || std::abs(a[1][1] - 1.0) > tol ||
          std::abs(a[0][1]) > tol || std::abs(a[1][0]) > tol)
        return false;
      if (std::abs(reaction(x, y)) > tol) return false;
    }
  }
  return true;
}

EllipticProblem benchmark_poisson_problem() {
  EllipticProblem p;
  p.diffusion = [](double, double) -> Matrix2 {
    return {{{1.0, 0.0}, {0.0, 1.0}}};
  };
  p.reaction = [](double, double) { return 0.0; };
  p.source = [](double x, double y) { return 2.0 * (x * x + y * y - x - y); };
  p.domain = Rect{0.0, 1.0, 0.0, 1.0};

  ExactSolution u;
  u.value = [](double x, double y) { return -x * (x - 1.0) * y * (y - 1.0); };
  u.gradient = [](double x, double y) -> Vec2 {
    return {-(2.0 * x - 1.0) * y * (y - 1.0), -x * (x - 1.0) * (2.0 * y - 1.0)};
  };
  u.dxx = [](double x, double y) {
    (void)x;
    return -2.0 * y * (y - 1.0);
  };
  u.dyy = [](double x, double y) {
    (void)y;
    return -2.0 * x * (x - 1.0);
  };
  p.exact = u;
  return p;
}

}  // namespace nfvm
