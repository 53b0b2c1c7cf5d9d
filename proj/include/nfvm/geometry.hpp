#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nfvm {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// Axis-aligned rectangle [xmin,xmax] x [ymin,ymax].
struct Rect {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }

  void validate() const {
    if (!(xmax > xmin) || !(ymax > ymin))
      throw std::invalid_argument("domain rectangle has zero or negative size");
  }
};

/// Simple polygon as a CCW vertex loop.
using Polygon = std::vector<Vec2>;

/// Signed area by the shoelace formula (positive for CCW loops).
inline double signed_area(const Polygon& p) {
  double a = 0.0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& u = p[i];
    const Vec2& v = p[(i + 1) % n];
    a += cross(u, v);
  }
  return 0.5 * a;
}

inline double polygon_area(const Polygon& p) { return std::abs(signed_area(p)); }

}  // namespace nfvm
