#pragma once

#include <array>

#include "nfvm/dual.hpp"
#include "nfvm/field.hpp"
#include "nfvm/linalg.hpp"
#include "nfvm/problem.hpp"

namespace nfvm {

/// Affine function a + bx*x + by*y with constant gradient (bx, by).
struct AffineFn {
  double a = 0.0, bx = 0.0, by = 0.0;
  double operator()(double x, double y) const { return a + bx * x + by * y; }
  Vec2 grad() const { return {bx, by}; }
};

/// One DOF per mesh edge; edges on the boundary carry constrained DOFs.
struct CRDofMap {
  Index n_dofs = 0;
  std::vector<Index> boundary_dofs;
};

CRDofMap build_cr_dof_map(const TriMesh& mesh);

/// The three affine basis functions on a triangle, basis[k] taking value 1
/// at the midpoint of edge[k] (the edge opposite vertex k) and 0 at the
/// other two midpoints.
std::array<AffineFn, 3> cr_local_basis(const TriMesh& mesh, Index tri);

/// Value of a C-R field inside a given triangle.
double cr_value(const TriMesh& mesh, const SolutionField& u, Index tri, double x, double y);

/// Gradient of a C-R field; constant per triangle.
Vec2 cr_gradient(const TriMesh& mesh, const SolutionField& u, Index tri);

/// Transfer to the test space: the piecewise-constant field whose value on
/// control volume K*_M is the midpoint value w(M). Identity on the
/// coefficient vector.
DualPieceField pi_cr(const SolutionField& w);

struct AssemblyOptions {
  int quad_area = 4;
  int quad_line = 3;
};

/// Petrov-Galerkin assembly: rows are control-volume characteristic test
/// functions, columns the C-R midpoint basis. Boundary DOF rows become
/// identity rows with zero RHS.
SparseSystem assemble_cr(const EllipticProblem& problem, const TriMesh& mesh,
                         const DualPartition& dual, const AssemblyOptions& opts = {});

SolutionField solve_cr(const SparseSystem& system);

/// Flux-balance residual per control volume, recomputed by quadrature:
/// integral of (a grad u).n over the interior dual boundary minus the
/// reaction integral plus the source integral. Zero entries for boundary
/// volumes.
std::vector<double> local_conservation_residual(const SolutionField& u,
                                                const EllipticProblem& problem,
                                                const TriMesh& mesh, const DualPartition& dual,
                                                const AssemblyOptions& opts = {});

}  // namespace nfvm
