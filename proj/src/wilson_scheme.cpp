#include "nfvm/wilson_scheme.hpp"

#include "nfvm/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nfvm {

namespace {

// Gauss integral of f over the directed edge a->b in the parameterization
// p(t) = a + t(b-a), t in [0,1] (no arc-length factor).
double integrate_param(const std::function<double(Vec2)>& f, Vec2 a, Vec2 b, int degree) {
  const QuadratureRule& rule = segment_rule(degree);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const double t = 0.5 * (rule.points[q].x + 1.0);
    s += 0.5 * rule.weights[q] * f(a + t * (b - a));
  }
  return s;
}

bool is_interior_cross_edge(Vec2 a, Vec2 b) {
  return (a.x == 0.0 && b.x == 0.0) || (a.y == 0.0 && b.y == 0.0);
}

WilsonReferenceElement build_reference_element() {
  WilsonReferenceElement ref;
  const int area_deg = 6, line_deg = 5;

  for (int l = 0; l < 6; ++l)
    for (int m = 0; m < 6; ++m) {
      double a1 = 0.0, a2 = 0.0;
      for (int q = 0; q < 4; ++q) {
        const Polygon quad = WilsonReferenceElement::quadrant(q);

        // Area part vanishes for the piecewise-constant tests.
        if (m >= 4) {
          a1 += integrate_polygon(
              [&](double x, double y) {
                return WilsonReferenceElement::grad_phi(l, x, y).x *
                       WilsonReferenceElement::grad_phi(m, x, y).x;
              },
              quad, area_deg);
          a2 += integrate_polygon(
              [&](double x, double y) {
                return WilsonReferenceElement::grad_phi(l, x, y).y *
                       WilsonReferenceElement::grad_phi(m, x, y).y;
              },
              quad, area_deg);
        }

        // Flux part over the interior dual cross, outward from quadrant q:
        // with the CCW loop, n ds = (dy, -dx), and the test trace is taken
        // from the owning quadrant.
        for (std::size_t k = 0; k < quad.size(); ++k) {
          const Vec2 pa = quad[k];
          const Vec2 pb = quad[(k + 1) % quad.size()];
          if (!is_interior_cross_edge(pa, pb)) continue;
          auto trace = [&](Vec2 p) {
            return m < 4 ? (m == q ? 1.0 : 0.0) : WilsonReferenceElement::phi(m, p.x, p.y);
          };
          a1 -= (pb.y - pa.y) *
                integrate_param(
                    [&](Vec2 p) {
                      return trace(p) * WilsonReferenceElement::grad_phi(l, p.x, p.y).x;
                    },
                    pa, pb, line_deg);
          a2 += (pb.x - pa.x) *
                integrate_param(
                    [&](Vec2 p) {
                      return trace(p) * WilsonReferenceElement::grad_phi(l, p.x, p.y).y;
                    },
                    pa, pb, line_deg);
        }
      }
      ref.a1(l, m) = a1;
      ref.a2(l, m) = a2;
    }

  ref.a1_sym = 0.5 * (ref.a1 + ref.a1.transpose());
  ref.a2_sym = 0.5 * (ref.a2 + ref.a2.transpose());

  Vec6 e;
  e << 1, 1, 1, 1, 0, 0;
  ref.e_proj = (e * e.transpose()) / e.squaredNorm();
  return ref;
}

}  // namespace

const WilsonReferenceElement& WilsonReferenceElement::instance() {
  static const WilsonReferenceElement ref = build_reference_element();
  return ref;
}

double WilsonReferenceElement::phi(int i, double x1, double x2) {
  switch (i) {
    case 0: return 0.25 * (1.0 + x1) * (1.0 + x2);
    case 1: return 0.25 * (1.0 - x1) * (1.0 + x2);
    case 2: return 0.25 * (1.0 - x1) * (1.0 - x2);
    case 3: return 0.25 * (1.0 + x1) * (1.0 - x2);
    case 4: return 0.125 * (x1 * x1 - 1.0);
    case 5: return 0.125 * (x2 * x2 - 1.0);
    default: throw std::out_of_range("basis index");
  }
}

Vec2 WilsonReferenceElement::grad_phi(int i, double x1, double x2) {
  switch (i) {
    case 0: return {0.25 * (1.0 + x2), 0.25 * (1.0 + x1)};
    case 1: return {-0.25 * (1.0 + x2), 0.25 * (1.0 - x1)};
    case 2: return {-0.25 * (1.0 - x2), -0.25 * (1.0 - x1)};
    case 3: return {0.25 * (1.0 - x2), -0.25 * (1.0 + x1)};
    case 4: return {0.25 * x1, 0.0};
    case 5: return {0.0, 0.25 * x2};
    default: throw std::out_of_range("basis index");
  }
}

double WilsonReferenceElement::eta(int i, const std::function<double(double, double)>& v,
                                   const std::function<double(double, double)>& dxx,
                                   const std::function<double(double, double)>& dyy) {
  if (i < 4) {
    const Vec2 p = corner(i);
    return v(p.x, p.y);
  }
  const Polygon square = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  return integrate_polygon(i == 4 ? dxx : dyy, square, 4);
}

Vec2 WilsonReferenceElement::corner(int i) {
  switch (i) {
    case 0: return {1.0, 1.0};
    case 1: return {-1.0, 1.0};
    case 2: return {-1.0, -1.0};
    case 3: return {1.0, -1.0};
    default: throw std::out_of_range("corner index");
  }
}

Polygon WilsonReferenceElement::quadrant(int q) {
  switch (q) {
    case 0: return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    case 1: return {{0, 0}, {0, 1}, {-1, 1}, {-1, 0}};
    case 2: return {{0, 0}, {-1, 0}, {-1, -1}, {0, -1}};
    case 3: return {{0, 0}, {0, -1}, {1, -1}, {1, 0}};
    default: throw std::out_of_range("quadrant index");
  }
}

std::pair<Mat6, Mat6> reference_matrices() {
  const WilsonReferenceElement& ref = WilsonReferenceElement::instance();
  return {ref.a1, ref.a2};
}

Mat6 element_stiffness(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("shape parameter must be positive");
  const WilsonReferenceElement& ref = WilsonReferenceElement::instance();
  return r * ref.a1 + (1.0 / r) * ref.a2;
}

Mat6 element_stiffness_physical(double h1, double h2, int degree) {
  Mat6 ak;
  auto to_physical = [&](Vec2 p) { return Vec2{h1 * p.x, h2 * p.y}; };
  auto grad = [&](int i, Vec2 p) {
    // Chain rule through the affine map (x, y) = (h1 x1, h2 x2).
    const Vec2 g = WilsonReferenceElement::grad_phi(i, p.x / h1, p.y / h2);
    return Vec2{g.x / h1, g.y / h2};
  };
  for (int l = 0; l < 6; ++l)
    for (int m = 0; m < 6; ++m) {
      double s = 0.0;
      for (int q = 0; q < 4; ++q) {
        Polygon quad = WilsonReferenceElement::quadrant(q);
        Polygon phys;
        for (Vec2 p : quad) phys.push_back(to_physical(p));
        if (m >= 4) {
          s += integrate_polygon(
              [&](double x, double y) {
                const Vec2 gl = grad(l, {x, y});
                const Vec2 gm = grad(m, {x, y});
                return gl.x * gm.x + gl.y * gm.y;
              },
              phys, degree);
        }
        for (std::size_t k = 0; k < quad.size(); ++k) {
          const Vec2 ra = quad[k], rb = quad[(k + 1) % quad.size()];
          if (!is_interior_cross_edge(ra, rb)) continue;
          const Vec2 pa = to_physical(ra), pb = to_physical(rb);
          const Vec2 d = pb - pa;
          const Vec2 n = (1.0 / norm(d)) * Vec2{d.y, -d.x};  // outward (CCW loop)
          s -= integrate_segment(
              [&](double x, double y) {
                const double trace =
                    m < 4 ? (m == q ? 1.0 : 0.0)
                          : WilsonReferenceElement::phi(m, x / h1, y / h2);
                const Vec2 gl = grad(l, {x, y});
                return trace * (gl.x * n.x + gl.y * n.y);
              },
              pa, pb, degree);
        }
      }
      ak(l, m) = s;
    }
  return ak;
}

Mat6 ellipticity_matrix(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("shape parameter must be positive");
  const WilsonReferenceElement& ref = WilsonReferenceElement::instance();
  return r * ref.a1_sym + (1.0 / r) * ref.a2_sym + ref.e_proj;
}

double ellipticity_certificate(const RectMesh& mesh) {
  double c = std::numeric_limits<double>::infinity();
  for (const RectCell& cell : mesh.cells) {
    Eigen::SelfAdjointEigenSolver<Mat6> es(ellipticity_matrix(cell.shape_ratio()));
    c = std::min(c, es.eigenvalues().minCoeff());
  }
  return c;
}

WilsonDofMap build_wilson_dof_map(const RectMesh& mesh) {
  WilsonDofMap map;
  map.n_vertex_dofs = mesh.n_vertices();
  map.n_dofs = map.n_vertex_dofs + 2 * mesh.n_cells();
  for (Index v = 0; v < mesh.n_vertices(); ++v)
    if (mesh.vertex_on_boundary[v]) map.boundary_dofs.push_back(v);
  return map;
}

SparseSystem assemble_wilson(const EllipticProblem& problem, const RectMesh& mesh,
                             const DualPartition& dual, const AssemblyOptions& opts) {
  if (dual.control_volumes.size() != static_cast<std::size_t>(mesh.n_vertices()) ||
      dual.cell_segments.size() != static_cast<std::size_t>(mesh.n_cells()))
    throw std::invalid_argument("dual partition does not match mesh");
  if (!problem.has_identity_diffusion_zero_reaction())
    throw std::invalid_argument(
        "wilson scheme requires identity diffusion and zero reaction; "
        "use the C-R scheme for variable coefficients");

  const WilsonDofMap dofs = build_wilson_dof_map(mesh);
  SystemBuilder builder(dofs.n_dofs);

  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const RectCell& cell = mesh.cells[c];
    const Mat6 ak = element_stiffness(cell.shape_ratio());
    Index global[6];
    for (int i = 0; i < 4; ++i) global[i] = cell.v[i];
    global[4] = dofs.moment_dof(c, 0);
    global[5] = dofs.moment_dof(c, 1);
    // Row = test index, column = trial index: ak(l, m) = a_K(phi_l, psi_m).
    for (int l = 0; l < 6; ++l)
      for (int m = 0; m < 6; ++m)
        if (ak(l, m) != 0.0) builder.add(global[m], global[l], ak(l, m));

    // Bubble-test load: integral of f * phi_{4+j} over the cell.
    const Polygon rect = {{cell.center.x - cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y + cell.hy},
                          {cell.center.x - cell.hx, cell.center.y + cell.hy}};
    for (int j = 0; j < 2; ++j) {
      const double load = integrate_polygon(
          [&](double x, double y) {
            const double x1 = (x - cell.center.x) / cell.hx;
            const double x2 = (y - cell.center.y) / cell.hy;
            return problem.source(x, y) * WilsonReferenceElement::phi(4 + j, x1, x2);
          },
          rect, opts.quad_area);
      builder.add_rhs(global[4 + j], load);
    }
  }

  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    double load = 0.0;
    for (const DualPiece& piece : dual.control_volumes[v].pieces)
      load += integrate_polygon(problem.source, piece.poly, opts.quad_area);
    builder.add_rhs(v, load);
  }

  for (Index v : dofs.boundary_dofs) builder.constrain_row(v);
  return builder.finalize();
}

SolutionField solve_wilson(const SparseSystem& system) {
  SolutionField u;
  u.scheme = SchemeKind::Wilson;
  u.coeffs = direct_solve(system);
  for (Index r : system.constrained_rows) u.coeffs[r] = 0.0;
  return u;
}

namespace {

std::array<double, 6> cell_coeffs(const RectMesh& mesh, const SolutionField& u, Index cell) {
  const WilsonDofMap dofs = build_wilson_dof_map(mesh);
  const RectCell& c = mesh.cells[cell];
  return {u.coeffs[c.v[0]], u.coeffs[c.v[1]], u.coeffs[c.v[2]], u.coeffs[c.v[3]],
          u.coeffs[dofs.moment_dof(cell, 0)], u.coeffs[dofs.moment_dof(cell, 1)]};
}

}  // namespace

double wilson_value(const RectMesh& mesh, const SolutionField& u, Index cell, double x,
                    double y) {
  const RectCell& c = mesh.cells[cell];
  const double x1 = (x - c.center.x) / c.hx;
  const double x2 = (y - c.center.y) / c.hy;
  const auto w = cell_coeffs(mesh, u, cell);
  double v = 0.0;
  for (int i = 0; i < 6; ++i) v += w[i] * WilsonReferenceElement::phi(i, x1, x2);
  return v;
}

Vec2 wilson_gradient(const RectMesh& mesh, const SolutionField& u, Index cell, double x,
                     double y) {
  const RectCell& c = mesh.cells[cell];
  const double x1 = (x - c.center.x) / c.hx;
  const double x2 = (y - c.center.y) / c.hy;
  const auto w = cell_coeffs(mesh, u, cell);
  Vec2 g{0.0, 0.0};
  for (int i = 0; i < 6; ++i) {
    const Vec2 gr = WilsonReferenceElement::grad_phi(i, x1, x2);
    g.x += w[i] * gr.x / c.hx;
    g.y += w[i] * gr.y / c.hy;
  }
  return g;
}

std::pair<SolutionField, SolutionField> split_conforming(const RectMesh& mesh,
                                                         const SolutionField& w) {
  const WilsonDofMap dofs = build_wilson_dof_map(mesh);
  SolutionField conforming = w, nonconforming = w;
  for (Index i = 0; i < dofs.n_dofs; ++i) {
    if (i < dofs.n_vertex_dofs)
      nonconforming.coeffs[i] = 0.0;
    else
      conforming.coeffs[i] = 0.0;
  }
  return {conforming, nonconforming};
}

SolutionField interpolate_wilson(const ExactSolution& v, const RectMesh& mesh, int quad_degree) {
  const WilsonDofMap dofs = build_wilson_dof_map(mesh);
  SolutionField u;
  u.scheme = SchemeKind::Wilson;
  u.coeffs.assign(dofs.n_dofs, 0.0);
  for (Index vi = 0; vi < mesh.n_vertices(); ++vi)
    u.coeffs[vi] = v.value(mesh.vertices[vi].x, mesh.vertices[vi].y);
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const RectCell& cell = mesh.cells[c];
    const Polygon rect = {{cell.center.x - cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y + cell.hy},
                          {cell.center.x - cell.hx, cell.center.y + cell.hy}};
    // Mean second derivatives pick up the affine scaling squared, divided
    // by the physical-to-reference area ratio.
    u.coeffs[dofs.moment_dof(c, 0)] =
        (cell.hx / cell.hy) * integrate_polygon(v.dxx, rect, quad_degree);
    u.coeffs[dofs.moment_dof(c, 1)] =
        (cell.hy / cell.hx) * integrate_polygon(v.dyy, rect, quad_degree);
  }
  return u;
}

DualPieceField pi_wilson(const RectMesh& mesh, const SolutionField& w) {
  DualPieceField f;
  const WilsonDofMap dofs = build_wilson_dof_map(mesh);
  auto bubble = [&mesh, dofs, coeffs = w.coeffs](Index cell, double x, double y) {
    const RectCell& c = mesh.cells[cell];
    const double x1 = (x - c.center.x) / c.hx;
    const double x2 = (y - c.center.y) / c.hy;
    return coeffs[dofs.moment_dof(cell, 0)] * WilsonReferenceElement::phi(4, x1, x2) +
           coeffs[dofs.moment_dof(cell, 1)] * WilsonReferenceElement::phi(5, x1, x2);
  };
  f.value = [bubble, coeffs = w.coeffs](Index cell, Index dof, double x, double y) {
    return coeffs[dof] + bubble(cell, x, y);
  };
  f.grad = [&mesh, dofs, coeffs = w.coeffs](Index cell, Index, double x, double y) -> Vec2 {
    const RectCell& c = mesh.cells[cell];
    const double x1 = (x - c.center.x) / c.hx;
    const double x2 = (y - c.center.y) / c.hy;
    const Vec2 g4 = WilsonReferenceElement::grad_phi(4, x1, x2);
    const Vec2 g5 = WilsonReferenceElement::grad_phi(5, x1, x2);
    const double c4 = coeffs[dofs.moment_dof(cell, 0)];
    const double c5 = coeffs[dofs.moment_dof(cell, 1)];
    return {(c4 * g4.x + c5 * g5.x) / c.hx, (c4 * g4.y + c5 * g5.y) / c.hy};
  };
  return f;
}

std::vector<double> local_conservation_residual(const SolutionField& u,
                                                const EllipticProblem& problem,
                                                const RectMesh& mesh, const DualPartition& dual,
                                                const AssemblyOptions& opts) {
  std::vector<double> residual(mesh.n_vertices(), 0.0);

  for (Index c = 0; c < mesh.n_cells(); ++c) {
    for (const DualSegment& seg : dual.cell_segments[c]) {
      const double flux = integrate_segment(
          [&](double x, double y) {
            const Vec2 g = wilson_gradient(mesh, u, c, x, y);
            return g.x * seg.normal.x + g.y * seg.normal.y;
          },
          seg.a, seg.b, opts.quad_line);
      residual[seg.dof_pos] += flux;
      residual[seg.dof_neg] -= flux;
    }
  }

  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    const ControlVolume& cv = dual.control_volumes[v];
    if (cv.boundary) {
      residual[v] = 0.0;
      continue;
    }
    for (const DualPiece& piece : cv.pieces)
      residual[v] += integrate_polygon(problem.source, piece.poly, opts.quad_area);
  }
  return residual;
}

}  // namespace nfvm
