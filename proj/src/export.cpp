#include "nfvm/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nfvm {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

class SvgCanvas {
 public:
  SvgCanvas(const Rect& domain, double width = 640.0, double margin = 16.0)
      : domain_(domain), margin_(margin) {
    scale_ = (width - 2.0 * margin) / domain.width();
    height_ = domain.height() * scale_ + 2.0 * margin;
    body_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
             "\" height=\"" + num(height_) + "\">\n";
  }

  void line(Vec2 a, Vec2 b, const char* style) {
    const Vec2 pa = map(a), pb = map(b);
    body_ += "<line x1=\"" + num(pa.x) + "\" y1=\"" + num(pa.y) + "\" x2=\"" + num(pb.x) +
             "\" y2=\"" + num(pb.y) + "\" style=\"" + style + "\"/>\n";
  }

  void polygon_outline(const Polygon& poly, const char* style) {
    for (std::size_t i = 0; i < poly.size(); ++i)
      line(poly[i], poly[(i + 1) % poly.size()], style);
  }

  std::string finish() { return body_ + "</svg>\n"; }

 private:
  Vec2 map(Vec2 p) const {
    // Flip y: SVG grows downward.
    return {margin_ + (p.x - domain_.xmin) * scale_,
            height_ - margin_ - (p.y - domain_.ymin) * scale_};
  }

  Rect domain_;
  double margin_, scale_, height_;
  std::string body_;
};

constexpr const char* kPrimalStyle = "stroke:black;stroke-width:1;fill:none";
constexpr const char* kDualStyle =
    "stroke:crimson;stroke-width:1;stroke-dasharray:5,4;fill:none";

void draw_dual(SvgCanvas& canvas, const DualPartition& dual) {
  for (const ControlVolume& cv : dual.control_volumes)
    canvas.polygon_outline(cv.polygon, kDualStyle);
}

}  // namespace

std::string mesh_to_text(const TriMesh& mesh) {
  std::string out;
  for (const Vec2& v : mesh.vertices) out += "v " + num(v.x) + ' ' + num(v.y) + '\n';
  for (const Triangle& t : mesh.triangles)
    out += "t " + std::to_string(t.v[0]) + ' ' + std::to_string(t.v[1]) + ' ' +
           std::to_string(t.v[2]) + '\n';
  for (const TriEdge& e : mesh.edges)
    out += "e " + std::to_string(e.v0) + ' ' + std::to_string(e.v1) + ' ' +
           (e.boundary ? "1" : "0") + '\n';
  return out;
}

std::string mesh_to_svg(const TriMesh& mesh, const DualPartition* dual) {
  SvgCanvas canvas(mesh.domain);
  for (const TriEdge& e : mesh.edges)
    canvas.line(mesh.vertices[e.v0], mesh.vertices[e.v1], kPrimalStyle);
  if (dual) draw_dual(canvas, *dual);
  return canvas.finish();
}

std::string mesh_to_svg(const RectMesh& mesh, const DualPartition* dual) {
  SvgCanvas canvas(mesh.domain);
  for (double x : mesh.x_breaks)
    canvas.line({x, mesh.domain.ymin}, {x, mesh.domain.ymax}, kPrimalStyle);
  for (double y : mesh.y_breaks)
    canvas.line({mesh.domain.xmin, y}, {mesh.domain.xmax, y}, kPrimalStyle);
  if (dual) draw_dual(canvas, *dual);
  return canvas.finish();
}

void write_text_file(const std::string& content, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace nfvm
