#include "nfvm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace nfvm {

namespace {

void finalize_triangle_geometry(const TriMesh& mesh, Triangle& t) {
  const Vec2 a = mesh.vertices[t.v[0]];
  const Vec2 b = mesh.vertices[t.v[1]];
  const Vec2 c = mesh.vertices[t.v[2]];
  const double area2 = cross(b - a, c - a);
  if (area2 <= 0.0) throw std::runtime_error("triangle with non-positive signed area");
  t.area = 0.5 * area2;
  t.barycenter = (1.0 / 3.0) * (a + b + c);

  const double la = norm(c - b);
  const double lb = norm(a - c);
  const double lc = norm(b - a);
  t.diameter = std::max({la, lb, lc});
  const double perimeter = la + lb + lc;
  t.inradius_diameter = 4.0 * t.area / perimeter;

  auto angle = [](double opp, double s1, double s2) {
    return std::acos(std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2), -1.0, 1.0));
  };
  t.min_angle = std::min({angle(la, lb, lc), angle(lb, lc, la), angle(lc, la, lb)});
}

}  // namespace

double TriMesh::max_diameter() const {
  double h = 0.0;
  for (const Triangle& t : triangles) h = std::max(h, t.diameter);
  return h;
}

TriMesh build_structured_tri_mesh(int m, int n, const Rect& domain) {
  if (m < 1 || n < 1) throw std::invalid_argument("mesh sizes must be >= 1");
  domain.validate();

  TriMesh mesh;
  mesh.domain = domain;
  const double dx = domain.width() / m;
  const double dy = domain.height() / n;

  mesh.vertices.reserve(static_cast<std::size_t>((m + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= m; ++i) {
      mesh.vertices.push_back({domain.xmin + i * dx, domain.ymin + j * dy});
      mesh.vertex_on_boundary.push_back(i == 0 || i == m || j == 0 || j == n);
    }

  auto vid = [m](Index i, Index j) { return j * (m + 1) + i; };

  mesh.triangles.reserve(static_cast<std::size_t>(2 * m * n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      const Index ll = vid(i, j), lr = vid(i + 1, j);
      const Index ul = vid(i, j + 1), ur = vid(i + 1, j + 1);
      // Diagonal from lower-left to upper-right of each sub-rectangle.
      mesh.triangles.push_back(Triangle{{ll, lr, ur}, {}, {}, 0, 0, 0, 0});
      mesh.triangles.push_back(Triangle{{ll, ur, ul}, {}, {}, 0, 0, 0, 0});
    }

  std::map<std::pair<Index, Index>, Index> edge_of;
  for (Index ti = 0; ti < mesh.n_triangles(); ++ti) {
    Triangle& t = mesh.triangles[ti];
    for (int k = 0; k < 3; ++k) {
      // Edge k is opposite vertex k.
      Index a = t.v[(k + 1) % 3];
      Index b = t.v[(k + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_of.try_emplace({a, b}, mesh.n_edges());
      if (inserted) {
        TriEdge e;
        e.v0 = a;
        e.v1 = b;
        e.tri0 = ti;
        e.midpoint = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
        mesh.edges.push_back(e);
      } else {
        TriEdge& e = mesh.edges[it->second];
        if (e.tri1 != kNoCell) throw std::runtime_error("edge with more than two incident triangles");
        e.tri1 = ti;
      }
      t.edge[k] = it->second;
    }
    finalize_triangle_geometry(mesh, t);
  }

  for (TriEdge& e : mesh.edges) e.boundary = (e.tri1 == kNoCell);
  return mesh;
}

double min_angle(const TriMesh& mesh) {
  double a = mesh.triangles.empty() ? 0.0 : mesh.triangles[0].min_angle;
  for (const Triangle& t : mesh.triangles) a = std::min(a, t.min_angle);
  return a;
}

double RectMesh::max_diameter() const {
  double h = 0.0;
  for (const RectCell& c : cells) h = std::max(h, 2.0 * std::hypot(c.hx, c.hy));
  return h;
}

RectMesh build_rect_mesh(std::vector<double> x_breaks, std::vector<double> y_breaks) {
  if (x_breaks.size() < 2 || y_breaks.size() < 2)
    throw std::invalid_argument("need at least two breakpoints per axis");
  for (std::size_t i = 1; i < x_breaks.size(); ++i)
    if (!(x_breaks[i] > x_breaks[i - 1]))
      throw std::invalid_argument("x breakpoints must be strictly increasing");
  for (std::size_t j = 1; j < y_breaks.size(); ++j)
    if (!(y_breaks[j] > y_breaks[j - 1]))
      throw std::invalid_argument("y breakpoints must be strictly increasing");

  RectMesh mesh;
  mesh.domain = Rect{x_breaks.front(), x_breaks.back(), y_breaks.front(), y_breaks.back()};
  mesh.x_breaks = std::move(x_breaks);
  mesh.y_breaks = std::move(y_breaks);

  const Index nx = mesh.nx(), ny = mesh.ny();
  for (Index j = 0; j <= ny; ++j)
    for (Index i = 0; i <= nx; ++i) {
      mesh.vertices.push_back({mesh.x_breaks[i], mesh.y_breaks[j]});
      mesh.vertex_on_boundary.push_back(i == 0 || i == nx || j == 0 || j == ny);
    }

  for (Index j = 0; j < ny; ++j)
    for (Index i = 0; i < nx; ++i) {
      RectCell c;
      c.hx = 0.5 * (mesh.x_breaks[i + 1] - mesh.x_breaks[i]);
      c.hy = 0.5 * (mesh.y_breaks[j + 1] - mesh.y_breaks[j]);
      c.center = {mesh.x_breaks[i] + c.hx, mesh.y_breaks[j] + c.hy};
      // Corner order follows the reference square: upper-right first, then CCW.
      c.v = {mesh.vertex_id(i + 1, j + 1), mesh.vertex_id(i, j + 1),
             mesh.vertex_id(i, j), mesh.vertex_id(i + 1, j)};
      mesh.cells.push_back(c);
    }

  mesh.vertex_cells.assign(mesh.vertices.size(), {kNoCell, kNoCell, kNoCell, kNoCell});
  for (Index j = 0; j <= ny; ++j)
    for (Index i = 0; i <= nx; ++i) {
      auto& inc = mesh.vertex_cells[mesh.vertex_id(i, j)];
      // Quadrant order around the vertex matches the reference corner order:
      // inc[q] is the cell seeing this vertex as its corner q.
      if (i > 0 && j > 0) inc[0] = mesh.cell_id(i - 1, j - 1);        // cell below-left
      if (i < nx && j > 0) inc[1] = mesh.cell_id(i, j - 1);           // below-right
      if (i < nx && j < ny) inc[2] = mesh.cell_id(i, j);              // above-right
      if (i > 0 && j < ny) inc[3] = mesh.cell_id(i - 1, j);           // above-left
    }
  return mesh;
}

RectMesh build_rect_mesh(int m, int n, const Rect& domain) {
  if (m < 1 || n < 1) throw std::invalid_argument("mesh sizes must be >= 1");
  domain.validate();
  std::vector<double> xb(m + 1), yb(n + 1);
  for (int i = 0; i <= m; ++i) xb[i] = domain.xmin + domain.width() * i / m;
  for (int j = 0; j <= n; ++j) yb[j] = domain.ymin + domain.height() * j / n;
  xb[m] = domain.xmax;
  yb[n] = domain.ymax;
  return build_rect_mesh(std::move(xb), std::move(yb));
}

}  // namespace nfvm
