#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfvm/dual.hpp"
#include "nfvm/field.hpp"
#include "nfvm/mesh.hpp"
#include "nfvm/problem.hpp"

namespace nfvm {

/// Broken H1 seminorm of the error, (sum_K int_K |grad u - grad u_T|^2)^(1/2).
double broken_h1_error(const ExactSolution& exact, const TriMesh& mesh, const SolutionField& u,
                       int degree = 6);
double broken_h1_error(const ExactSolution& exact, const RectMesh& mesh, const SolutionField& u,
                       int degree = 6);

/// L2 norm of the error, (int |u - u_T|^2)^(1/2).
double l2_error(const ExactSolution& exact, const TriMesh& mesh, const SolutionField& u,
                int degree = 6);
double l2_error(const ExactSolution& exact, const RectMesh& mesh, const SolutionField& u,
                int degree = 6);

/// Discrete test-space seminorm: piecewise gradients over dual pieces plus
/// length-weighted squared jumps across the dual segments interior to each
/// primal cell, |v|_{1,V} = sqrt(sum |v|^2_{1,K* cap K}
///                               + sum_l |l|^{-1} int_l [v]^2).
double test_space_seminorm(const DualPieceField& v, const DualPartition& dual, int degree = 4);

/// One study row; orders are absent on the coarsest mesh of a family.
struct ConvergenceRow {
  std::string family;
  Index m = 0, n = 0;
  Index dofs = 0;
  double h = 0.0;
  double err_h1 = 0.0;
  std::optional<double> order_h1;
  std::optional<double> err_l2;
  std::optional<double> order_l2;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool has_l2 = false;
};

/// Observed orders log2(e_prev / e_cur) between consecutive refinements
/// (h halves per row). Result[0] is empty.
std::vector<std::optional<double>> convergence_order(const std::vector<double>& errors);

/// CSV serialization: header family,M,N,n,h,err_h1,order_h1[,err_l2,order_l2],
/// numbers in %.6e, absent orders left empty.
std::string to_csv(const ConvergenceReport& report);
void write_csv(const ConvergenceReport& report, const std::string& path);

}  // namespace nfvm
