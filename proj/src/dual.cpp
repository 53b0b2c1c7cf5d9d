#include "nfvm/dual.hpp"

#include <algorithm>
#include <cmath>

namespace nfvm {

namespace {

Polygon ccw(Polygon p) {
  if (signed_area(p) < 0.0) std::reverse(p.begin(), p.end());
  return p;
}

DualSegment make_segment(Vec2 a, Vec2 b, Index left_dof, Index right_dof) {
  DualSegment s;
  s.a = a;
  s.b = b;
  s.length = norm(b - a);
  const Vec2 t = (1.0 / s.length) * (b - a);
  s.normal = {t.y, -t.x};  // right-hand normal of a->b
  s.dof_pos = left_dof;    // normal points away from the left side
  s.dof_neg = right_dof;
  return s;
}

// Side of point p relative to the directed line a->b: >0 means left.
double side(Vec2 a, Vec2 b, Vec2 p) { return cross(b - a, p - a); }

}  // namespace

double DualPartition::total_area() const {
  double s = 0.0;
  for (const ControlVolume& cv : control_volumes) s += cv.area;
  return s;
}

DualPartition build_cr_dual(const TriMesh& mesh) {
  DualPartition dual;
  dual.control_volumes.resize(mesh.edges.size());
  dual.cell_segments.resize(mesh.triangles.size());

  for (Index ei = 0; ei < mesh.n_edges(); ++ei) {
    const TriEdge& e = mesh.edges[ei];
    ControlVolume& cv = dual.control_volumes[ei];
    cv.dof_site = e.midpoint;
    cv.boundary = e.boundary;
    const Vec2 pi = mesh.vertices[e.v0];
    const Vec2 pj = mesh.vertices[e.v1];
    const Vec2 q0 = mesh.triangles[e.tri0].barycenter;
    if (e.boundary) {
      cv.polygon = ccw({pi, q0, pj});
      cv.pieces.push_back({e.tri0, cv.polygon});
    } else {
      const Vec2 q1 = mesh.triangles[e.tri1].barycenter;
      cv.polygon = ccw({pi, q0, pj, q1});
      cv.pieces.push_back({e.tri0, ccw({pi, q0, pj})});
      cv.pieces.push_back({e.tri1, ccw({pi, q1, pj})});
    }
    cv.area = polygon_area(cv.polygon);
  }

  // Three interior dual segments per triangle, vertex to barycenter. The
  // segment at vertex v[k] separates the volumes of the two edges of K
  // incident to v[k], i.e. edge[(k+1)%3] and edge[(k+2)%3].
  for (Index ti = 0; ti < mesh.n_triangles(); ++ti) {
    const Triangle& t = mesh.triangles[ti];
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = mesh.vertices[t.v[k]];
      const Index ea = t.edge[(k + 1) % 3];
      const Index eb = t.edge[(k + 2) % 3];
      const Vec2 ma = mesh.edges[ea].midpoint;
      Index left = ea, right = eb;
      if (side(p, t.barycenter, ma) < 0.0) std::swap(left, right);
      dual.cell_segments[ti].push_back(make_segment(p, t.barycenter, left, right));
    }
  }
  return dual;
}

DualPartition build_wilson_dual(const RectMesh& mesh) {
  DualPartition dual;
  dual.control_volumes.resize(mesh.vertices.size());
  dual.cell_segments.resize(mesh.cells.size());

  const Index nx = mesh.nx(), ny = mesh.ny();
  auto cx = [&mesh](Index i) { return mesh.cells[mesh.cell_id(i, 0)].center.x; };
  auto cy = [&mesh](Index j) { return mesh.cells[mesh.cell_id(0, j)].center.y; };

  for (Index j = 0; j <= ny; ++j)
    for (Index i = 0; i <= nx; ++i) {
      const Index vi = mesh.vertex_id(i, j);
      ControlVolume& cv = dual.control_volumes[vi];
      cv.dof_site = mesh.vertices[vi];
      cv.boundary = mesh.vertex_on_boundary[vi];
      const double x0 = (i > 0) ? cx(i - 1) : mesh.domain.xmin;
      const double x1 = (i < nx) ? cx(i) : mesh.domain.xmax;
      const double y0 = (j > 0) ? cy(j - 1) : mesh.domain.ymin;
      const double y1 = (j < ny) ? cy(j) : mesh.domain.ymax;
      cv.polygon = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
      cv.area = polygon_area(cv.polygon);
      for (Index c : mesh.vertex_cells[vi]) {
        if (c == kNoCell) continue;
        const Vec2 v = cv.dof_site;
        const Vec2 q = mesh.cells[c].center;
        const double px0 = std::min(v.x, q.x), px1 = std::max(v.x, q.x);
        const double py0 = std::min(v.y, q.y), py1 = std::max(v.y, q.y);
        cv.pieces.push_back({c, {{px0, py0}, {px1, py0}, {px1, py1}, {px0, py1}}});
      }
    }

  // Four interior dual segments per cell: edge midpoint to center. Each
  // separates the quadrants of two adjacent corners.
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const RectCell& cell = mesh.cells[c];
    const Vec2 q = cell.center;
    const Vec2 mids[4] = {{q.x, q.y + cell.hy},   // top
                          {q.x - cell.hx, q.y},   // left
                          {q.x, q.y - cell.hy},   // bottom
                          {q.x + cell.hx, q.y}};  // right
    // Corner order is UR, UL, LL, LR; midpoint k sits between corners k and k+1.
    for (int k = 0; k < 4; ++k) {
      const Index va = cell.v[k];
      const Index vb = cell.v[(k + 1) % 4];
      Index left = va, right = vb;
      if (side(mids[k], q, mesh.vertices[va]) < 0.0) std::swap(left, right);
      dual.cell_segments[c].push_back(make_segment(mids[k], q, left, right));
    }
  }
  return dual;
}

}  // namespace nfvm
