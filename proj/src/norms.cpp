#include "nfvm/norms.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "nfvm/cr_scheme.hpp"
#include "nfvm/quadrature.hpp"
#include "nfvm/wilson_scheme.hpp"

namespace nfvm {

double broken_h1_error(const ExactSolution& exact, const TriMesh& mesh, const SolutionField& u,
                       int degree) {
  double s = 0.0;
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    const Vec2 gt = cr_gradient(mesh, u, t);
    s += integrate_triangle(
        [&](double x, double y) {
          const Vec2 g = exact.gradient(x, y);
          const double dx = g.x - gt.x, dy = g.y - gt.y;
          return dx * dx + dy * dy;
        },
        mesh.vertices[tri.v[0]], mesh.vertices[tri.v[1]], mesh.vertices[tri.v[2]], degree);
  }
  return std::sqrt(s);
}

double broken_h1_error(const ExactSolution& exact, const RectMesh& mesh, const SolutionField& u,
                       int degree) {
  double s = 0.0;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const RectCell& cell = mesh.cells[c];
    const Polygon rect = {{cell.center.x - cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y + cell.hy},
                          {cell.center.x - cell.hx, cell.center.y + cell.hy}};
    s += integrate_polygon(
        [&](double x, double y) {
          const Vec2 g = exact.gradient(x, y);
          const Vec2 gt = wilson_gradient(mesh, u, c, x, y);
          const double dx = g.x - gt.x, dy = g.y - gt.y;
          return dx * dx + dy * dy;
        },
        rect, degree);
  }
  return std::sqrt(s);
}

double l2_error(const ExactSolution& exact, const TriMesh& mesh, const SolutionField& u,
                int degree) {
  double s = 0.0;
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    s += integrate_triangle(
        [&](double x, double y) {
          const double d = exact.value(x, y) - cr_value(mesh, u, t, x, y);
          return d * d;
        },
        mesh.vertices[tri.v[0]], mesh.vertices[tri.v[1]], mesh.vertices[tri.v[2]], degree);
  }
  return std::sqrt(s);
}

double l2_error(const ExactSolution& exact, const RectMesh& mesh, const SolutionField& u,
                int degree) {
  double s = 0.0;
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const RectCell& cell = mesh.cells[c];
    const Polygon rect = {{cell.center.x - cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y - cell.hy},
                          {cell.center.x + cell.hx, cell.center.y + cell.hy},
                          {cell.center.x - cell.hx, cell.center.y + cell.hy}};
    s += integrate_polygon(
        [&](double x, double y) {
          const double d = exact.value(x, y) - wilson_value(mesh, u, c, x, y);
          return d * d;
        },
        rect, degree);
  }
  return std::sqrt(s);
}

double test_space_seminorm(const DualPieceField& v, const DualPartition& dual, int degree) {
  double s = 0.0;

  for (std::size_t cv = 0; cv < dual.control_volumes.size(); ++cv) {
    for (const DualPiece& piece : dual.control_volumes[cv].pieces) {
      s += integrate_polygon(
          [&](double x, double y) {
            const Vec2 g = v.grad(piece.cell, static_cast<Index>(cv), x, y);
            return g.x * g.x + g.y * g.y;
          },
          piece.poly, degree);
    }
  }

  for (std::size_t c = 0; c < dual.cell_segments.size(); ++c) {
    for (const DualSegment& seg : dual.cell_segments[c]) {
      const double jump_sq = integrate_segment(
          [&](double x, double y) {
            const double jump = v.value(static_cast<Index>(c), seg.dof_pos, x, y) -
                                v.value(static_cast<Index>(c), seg.dof_neg, x, y);
            return jump * jump;
          },
          seg.a, seg.b, degree);
      s += jump_sq / seg.length;
    }
  }
  return std::sqrt(s);
}

std::vector<std::optional<double>> convergence_order(const std::vector<double>& errors) {
  std::vector<std::optional<double>> orders(errors.size());
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i - 1] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("convergence_order requires positive errors");
    orders[i] = std::log2(errors[i - 1] / errors[i]);
  }
  return orders;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

}  // namespace

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "family,M,N,n,h,err_h1,order_h1";
  if (report.has_l2) out += ",err_l2,order_l2";
  out += '\n';
  for (const ConvergenceRow& r : report.rows) {
    out += r.family + ',' + std::to_string(r.m) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.dofs) + ',' + fmt(r.h) + ',' + fmt(r.err_h1) + ',' + fmt(r.order_h1);
    if (report.has_l2) out += ',' + fmt(r.err_l2) + ',' + fmt(r.order_l2);
    out += '\n';
  }
  return out;
}

void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << to_csv(report);
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace nfvm
