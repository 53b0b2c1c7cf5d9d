#include "nfvm/cr_scheme.hpp"

#include "nfvm/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nfvm {

CRDofMap build_cr_dof_map(const TriMesh& mesh) {
  CRDofMap map;
  map.n_dofs = mesh.n_edges();
  for (Index e = 0; e < mesh.n_edges(); ++e)
    if (mesh.edges[e].boundary) map.boundary_dofs.push_back(e);
  return map;
}

std::array<AffineFn, 3> cr_local_basis(const TriMesh& mesh, Index tri) {
  const Triangle& t = mesh.triangles[tri];
  std::array<AffineFn, 3> basis;
  for (int k = 0; k < 3; ++k) {
    // Barycentric coordinate of vertex k: lambda_k(x) = cross(d, x - p1) / (2A)
    // with d along the opposite edge; the C-R basis is 1 - 2 lambda_k.
    const Vec2 p1 = mesh.vertices[t.v[(k + 1) % 3]];
    const Vec2 p2 = mesh.vertices[t.v[(k + 2) % 3]];
    const Vec2 d = p2 - p1;
    AffineFn& f = basis[k];
    f.bx = d.y / t.area;
    f.by = -d.x / t.area;
    // lambda_k vanishes on the opposite edge, so the basis equals 1 at its
    // midpoint; fix the constant from that value.
    const Vec2 m = 0.5 * (p1 + p2);
    f.a = 1.0 - f.bx * m.x - f.by * m.y;
  }
  return basis;
}

double cr_value(const TriMesh& mesh, const SolutionField& u, Index tri, double x, double y) {
  const auto basis = cr_local_basis(mesh, tri);
  const Triangle& t = mesh.triangles[tri];
  double v = 0.0;
  for (int k = 0; k < 3; ++k) v += u.coeffs[t.edge[k]] * basis[k](x, y);
  return v;
}

Vec2 cr_gradient(const TriMesh& mesh, const SolutionField& u, Index tri) {
  const auto basis = cr_local_basis(mesh, tri);
  const Triangle& t = mesh.triangles[tri];
  Vec2 g{0.0, 0.0};
  for (int k = 0; k < 3; ++k) g = g + u.coeffs[t.edge[k]] * basis[k].grad();
  return g;
}

DualPieceField pi_cr(const SolutionField& w) {
  DualPieceField f;
  f.value = [coeffs = w.coeffs](Index, Index dof, double, double) { return coeffs[dof]; };
  f.grad = [](Index, Index, double, double) -> Vec2 { return {0.0, 0.0}; };
  return f;
}

SparseSystem assemble_cr(const EllipticProblem& problem, const TriMesh& mesh,
                         const DualPartition& dual, const AssemblyOptions& opts) {
  if (dual.cell_segments.size() != static_cast<std::size_t>(mesh.n_triangles()) ||
      dual.control_volumes.size() != static_cast<std::size_t>(mesh.n_edges()))
    throw std::invalid_argument("dual partition does not match mesh");

  const CRDofMap dofs = build_cr_dof_map(mesh);
  SystemBuilder builder(dofs.n_dofs);

  for (Index ti = 0; ti < mesh.n_triangles(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    const auto basis = cr_local_basis(mesh, ti);

    // Flux part: each interior dual segment carries the trial flux out of
    // dof_pos and into dof_neg.
    for (const DualSegment& seg : dual.cell_segments[ti]) {
      for (int j = 0; j < 3; ++j) {
        const Vec2 g = basis[j].grad();
        const double flux = integrate_segment(
            [&](double x, double y) {
              const Matrix2 a = problem.diffusion(x, y);
              return (a[0][0] * g.x + a[0][1] * g.y) * seg.normal.x +
                     (a[1][0] * g.x + a[1][1] * g.y) * seg.normal.y;
            },
            seg.a, seg.b, opts.quad_line);
        builder.add(seg.dof_pos, t.edge[j], -flux);
        builder.add(seg.dof_neg, t.edge[j], flux);
      }
    }

    // Reaction part: integral of b * phi_j over the dual piece of each edge.
    for (int k = 0; k < 3; ++k) {
      const Vec2 p1 = mesh.vertices[t.v[(k + 1) % 3]];
      const Vec2 p2 = mesh.vertices[t.v[(k + 2) % 3]];
      for (int j = 0; j < 3; ++j) {
        const double mass = integrate_triangle(
            [&](double x, double y) { return problem.reaction(x, y) * basis[j](x, y); }, p1, p2,
            t.barycenter, opts.quad_area);
        if (mass != 0.0) builder.add(t.edge[k], t.edge[j], mass);
      }
    }
  }

  for (Index e = 0; e < mesh.n_edges(); ++e) {
    double load = 0.0;
    for (const DualPiece& piece : dual.control_volumes[e].pieces)
      load += integrate_polygon(problem.source, piece.poly, opts.quad_area);
    builder.add_rhs(e, load);
  }

  for (Index e : dofs.boundary_dofs) builder.constrain_row(e);
  return builder.finalize();
}

SolutionField solve_cr(const SparseSystem& system) {
  SolutionField u;
  u.scheme = SchemeKind::CR;
  u.coeffs = direct_solve(system);
  for (Index r : system.constrained_rows) u.coeffs[r] = 0.0;
  return u;
}

std::vector<double> local_conservation_residual(const SolutionField& u,
                                                const EllipticProblem& problem,
                                                const TriMesh& mesh, const DualPartition& dual,
                                                const AssemblyOptions& opts) {
  std::vector<double> residual(dual.control_volumes.size(), 0.0);

  for (Index ti = 0; ti < mesh.n_triangles(); ++ti) {
    const Vec2 g = cr_gradient(mesh, u, ti);
    for (const DualSegment& seg : dual.cell_segments[ti]) {
      const double flux = integrate_segment(
          [&](double x, double y) {
            const Matrix2 a = problem.diffusion(x, y);
            return (a[0][0] * g.x + a[0][1] * g.y) * seg.normal.x +
                   (a[1][0] * g.x + a[1][1] * g.y) * seg.normal.y;
          },
          seg.a, seg.b, opts.quad_line);
      residual[seg.dof_pos] += flux;
      residual[seg.dof_neg] -= flux;
    }
  }

  for (std::size_t i = 0; i < dual.control_volumes.size(); ++i) {
    const ControlVolume& cv = dual.control_volumes[i];
    if (cv.boundary) {
      residual[i] = 0.0;
      continue;
    }
    for (const DualPiece& piece : cv.pieces) {
      residual[i] += integrate_polygon(
          [&](double x, double y) {
            return problem.source(x, y) -
                   problem.reaction(x, y) * cr_value(mesh, u, piece.cell, x, y);
          },
          piece.poly, opts.quad_area);
    }
  }
  return residual;
}

}  // namespace nfvm
