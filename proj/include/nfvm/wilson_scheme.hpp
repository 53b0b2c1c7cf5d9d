#pragma once

#include <Eigen/Dense>

#include "nfvm/cr_scheme.hpp"  // AssemblyOptions
#include "nfvm/dual.hpp"
#include "nfvm/field.hpp"
#include "nfvm/linalg.hpp"
#include "nfvm/problem.hpp"

namespace nfvm {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// The 6-DOF Wilson element on [-1,1]^2: bilinear corner basis plus the two
/// quadratic bubbles, DOF functionals (4 corner values, 2 mean pure second
/// derivatives), the quadrant dual partition and the hybrid test basis.
struct WilsonReferenceElement {
  static const WilsonReferenceElement& instance();

  /// Trial basis value / gradient on the reference square, i in 0..5.
  static double phi(int i, double x1, double x2);
  static Vec2 grad_phi(int i, double x1, double x2);

  /// DOF functional applied to a smooth function (derivative callbacks for
  /// the moment functionals), i in 0..5.
  static double eta(int i, const std::function<double(double, double)>& v,
                    const std::function<double(double, double)>& dxx,
                    const std::function<double(double, double)>& dyy);

  /// Reference corners in order upper-right, upper-left, lower-left,
  /// lower-right.
  static Vec2 corner(int i);

  /// CCW polygon of reference dual quadrant q in 0..3 (quadrant q holds
  /// corner q).
  static Polygon quadrant(int q);

  Mat6 a1, a2;            // [a_i(phi_l, psi_m)]
  Mat6 a1_sym, a2_sym;    // symmetrizations
  Mat6 e_proj;            // rank-1 projection onto span{(1,1,1,1,0,0)}
};

/// The pair (A1, A2) of reference matrices (cached singleton data).
std::pair<Mat6, Mat6> reference_matrices();

/// Element stiffness r*A1 + (1/r)*A2 for shape parameter r = h2/h1.
Mat6 element_stiffness(double r);

/// Brute-force oracle for element_stiffness: assembles the element form by
/// quadrature directly on the physical cell [-h1,h1] x [-h2,h2], without the
/// r-parameterization.
Mat6 element_stiffness_physical(double h1, double h2, int degree = 6);

/// H(r) = r*sym(A1) + (1/r)*sym(A2) + E.
Mat6 ellipticity_matrix(double r);

/// min over cells of lambda_min(H(r_K)).
double ellipticity_certificate(const RectMesh& mesh);

/// Vertex DOFs first (one per mesh vertex), then two moment DOFs per cell.
struct WilsonDofMap {
  Index n_vertex_dofs = 0;
  Index n_dofs = 0;
  std::vector<Index> boundary_dofs;

  Index moment_dof(Index cell, int j) const { return n_vertex_dofs + 2 * cell + j; }
};

WilsonDofMap build_wilson_dof_map(const RectMesh& mesh);

/// Assembly for identity diffusion and zero reaction; rejects other
/// coefficients. Rows: control-volume tests for vertex DOFs, bubble tests
/// for moment DOFs.
SparseSystem assemble_wilson(const EllipticProblem& problem, const RectMesh& mesh,
                             const DualPartition& dual, const AssemblyOptions& opts = {});

SolutionField solve_wilson(const SparseSystem& system);

/// Value / gradient of a Wilson field inside a given cell.
double wilson_value(const RectMesh& mesh, const SolutionField& u, Index cell, double x, double y);
Vec2 wilson_gradient(const RectMesh& mesh, const SolutionField& u, Index cell, double x, double y);

/// w = w1 + w2: the continuous bilinear part (vertex DOFs) and the
/// discontinuous bubble part (moment DOFs). Both parts keep the full
/// coefficient length with the complementary block zeroed.
std::pair<SolutionField, SolutionField> split_conforming(const RectMesh& mesh,
                                                         const SolutionField& w);

/// Transfer to the hybrid test space: vertex coefficients become
/// control-volume constants, bubble coefficients stay on the trial bubbles.
DualPieceField pi_wilson(const RectMesh& mesh, const SolutionField& w);

/// DOF-functional interpolant of an exact solution.
SolutionField interpolate_wilson(const ExactSolution& v, const RectMesh& mesh,
                                 int quad_degree = 4);

/// Flux-balance residuals over interior vertex control volumes.
std::vector<double> local_conservation_residual(const SolutionField& u,
                                                const EllipticProblem& problem,
                                                const RectMesh& mesh, const DualPartition& dual,
                                                const AssemblyOptions& opts = {});

}  // namespace nfvm
