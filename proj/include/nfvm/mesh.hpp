#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nfvm/geometry.hpp"

namespace nfvm {

using Index = std::int64_t;
constexpr Index kNoCell = -1;

struct TriEdge {
  Index v0 = 0, v1 = 0;          // vertex ids, v0 < v1
  Index tri0 = kNoCell;          // incident triangles
  Index tri1 = kNoCell;
  bool boundary = false;
  Vec2 midpoint;
};

struct Triangle {
  std::array<Index, 3> v;        // CCW vertex ids
  std::array<Index, 3> edge;     // edge[i] is opposite vertex v[i]
  Vec2 barycenter;
  double area = 0.0;
  double diameter = 0.0;         // h_K
  double inradius_diameter = 0.0;
  double min_angle = 0.0;        // radians
};

/// Structured triangulation of a rectangle with full edge adjacency.
struct TriMesh {
  Rect domain;
  std::vector<Vec2> vertices;
  std::vector<bool> vertex_on_boundary;
  std::vector<Triangle> triangles;
  std::vector<TriEdge> edges;

  Index n_vertices() const { return static_cast<Index>(vertices.size()); }
  Index n_triangles() const { return static_cast<Index>(triangles.size()); }
  Index n_edges() const { return static_cast<Index>(edges.size()); }

  double max_diameter() const;
};

/// Subdivides the domain into M x N equal rectangles and splits each along
/// the lower-left to upper-right diagonal.
TriMesh build_structured_tri_mesh(int m, int n, const Rect& domain);

/// Minimum interior angle over all triangles, in radians.
double min_angle(const TriMesh& mesh);

struct RectCell {
  std::array<Index, 4> v;        // corner ids: upper-right, upper-left, lower-left, lower-right
  Vec2 center;
  double hx = 0.0;               // half-widths h1, h2
  double hy = 0.0;
  double shape_ratio() const { return hy / hx; }
};

/// Tensor-product rectangle mesh.
struct RectMesh {
  Rect domain;
  std::vector<double> x_breaks;  // strictly increasing, first = xmin, last = xmax
  std::vector<double> y_breaks;
  std::vector<Vec2> vertices;    // (nx+1)*(ny+1), row-major by y then x
  std::vector<bool> vertex_on_boundary;
  std::vector<RectCell> cells;   // nx*ny, row-major
  std::vector<std::array<Index, 4>> vertex_cells;  // incident cells per vertex (kNoCell if absent)

  Index nx() const { return static_cast<Index>(x_breaks.size()) - 1; }
  Index ny() const { return static_cast<Index>(y_breaks.size()) - 1; }
  Index n_vertices() const { return static_cast<Index>(vertices.size()); }
  Index n_cells() const { return static_cast<Index>(cells.size()); }
  Index vertex_id(Index i, Index j) const { return j * (nx() + 1) + i; }
  Index cell_id(Index i, Index j) const { return j * nx() + i; }

  double max_diameter() const;
};

/// Uniform M x N rectangle mesh of the domain.
RectMesh build_rect_mesh(int m, int n, const Rect& domain);

/// Rectangle mesh from explicit breakpoint lists (strictly increasing,
/// spanning the domain).
RectMesh build_rect_mesh(std::vector<double> x_breaks, std::vector<double> y_breaks);

}  // namespace nfvm
