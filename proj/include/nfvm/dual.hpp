#pragma once

#include <vector>

#include "nfvm/mesh.hpp"

namespace nfvm {

/// Intersection of a control volume with one primal cell.
struct DualPiece {
  Index cell = kNoCell;
  Polygon poly;  // convex, CCW
};

/// Control volume around one DOF site (edge midpoint or vertex).
struct ControlVolume {
  Vec2 dof_site;
  Polygon polygon;  // simple, CCW
  std::vector<DualPiece> pieces;
  bool boundary = false;
  double area = 0.0;
};

/// Oriented dual gridline segment interior to one primal cell. The unit
/// normal points out of control volume dof_pos, into dof_neg.
struct DualSegment {
  Vec2 a, b;
  Vec2 normal;
  Index dof_pos = kNoCell;
  Index dof_neg = kNoCell;
  double length = 0.0;
};

/// Dual partition: control volumes indexed like the scheme's DOFs, plus the
/// interior dual segments grouped per primal cell (the form assembly walks
/// cells, not volumes).
struct DualPartition {
  std::vector<ControlVolume> control_volumes;
  std::vector<std::vector<DualSegment>> cell_segments;

  double total_area() const;
};

/// One control volume per edge midpoint: quadrilaterals through the two
/// adjacent barycenters for interior edges, triangles for boundary edges.
DualPartition build_cr_dual(const TriMesh& mesh);

/// One control volume per vertex: the rectangle spanned by the neighboring
/// cell centers, clipped to the domain at the boundary.
DualPartition build_wilson_dual(const RectMesh& mesh);

}  // namespace nfvm
