#pragma once

#include <utility>
#include <vector>

#include "nfvm/norms.hpp"
#include "nfvm/problem.hpp"

namespace nfvm {

struct StudyOptions {
  int quad_area = 4;
  int quad_line = 3;
  int error_degree = 6;
  bool with_l2 = false;
};

using MeshSizeList = std::vector<std::pair<Index, Index>>;

/// (M,N) doubling family: k levels starting from (m0, n0).
MeshSizeList refinement_family(Index m0, Index n0, int levels);

/// The three benchmark families (2,2), (1,3), (1,20), seven levels each.
std::vector<MeshSizeList> benchmark_families();

/// Solve the problem with the C-R scheme on each mesh of the family and
/// report broken-H1 (and optionally L2) errors with observed orders.
ConvergenceReport run_cr_study(const EllipticProblem& problem, const MeshSizeList& sizes,
                               const std::string& family, const StudyOptions& opts = {});

/// Same driver for the hybrid Wilson scheme on rectangle meshes.
ConvergenceReport run_wilson_study(const EllipticProblem& problem, const MeshSizeList& sizes,
                                   const std::string& family, const StudyOptions& opts = {});

/// Errors of the Wilson DOF interpolant of the exact solution (no solve);
/// used to check the interpolation-operator rates.
ConvergenceReport run_wilson_interpolation_study(const EllipticProblem& problem,
                                                 const MeshSizeList& sizes,
                                                 const std::string& family,
                                                 const StudyOptions& opts = {});

}  // namespace nfvm
