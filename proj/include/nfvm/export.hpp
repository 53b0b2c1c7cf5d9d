#pragma once

#include <string>

#include "nfvm/dual.hpp"
#include "nfvm/mesh.hpp"

namespace nfvm {

/// Plain-text mesh record format, one record per line:
///   v x y          vertex coordinates
///   t i j k        triangle corner ids (CCW)
///   e i j flag     edge endpoints and boundary flag
std::string mesh_to_text(const TriMesh& mesh);

/// SVG 1.1 drawing of the primal mesh (solid) with the dual partition
/// boundaries (dashed) overlaid when given. Byte-deterministic.
std::string mesh_to_svg(const TriMesh& mesh, const DualPartition* dual = nullptr);
std::string mesh_to_svg(const RectMesh& mesh, const DualPartition* dual = nullptr);

void write_text_file(const std::string& content, const std::string& path);

}  // namespace nfvm
