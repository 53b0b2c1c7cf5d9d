#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nfvm/quadrature.hpp"

using namespace nfvm;

namespace {

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

// int_T x^p y^q over the unit triangle (0,0),(1,0),(0,1).
double triangle_monomial(int p, int q) {
  return factorial(p) * factorial(q) / factorial(p + q + 2);
}

}  // namespace

TEST_CASE("segment rules integrate polynomials exactly") {
  const Vec2 a{0.25, -1.0}, b{1.25, 1.0};
  const double len_factor = 1.0;  // integrate_segment uses the parametric measure scaled by |b-a|
  CHECK(integrate_segment([](double, double) { return 3.0; }, a, b, 1) ==
        doctest::Approx(3.0 * norm(b - a)).epsilon(1e-14));
  // f(x,y) = x along the segment: mean x is 0.75.
  CHECK(integrate_segment([](double x, double) { return x; }, a, b, 3) ==
        doctest::Approx(0.75 * norm(b - a)).epsilon(1e-14));
  // Cubic along the parameter: f = y^3, y(t) = -1 + 2t, int_0^1 y(t)^3 dt = 0.
  CHECK(std::abs(integrate_segment([](double, double y) { return y * y * y; }, a, b, 3)) <=
        1e-14 * len_factor);
}

TEST_CASE("segment rule weights sum to the reference length") {
  for (int d = 1; d <= 9; ++d) {
    const QuadratureRule& r = segment_rule(d);
    CHECK(r.exact_degree >= d);
    const double sum = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("triangle rules are exact for monomials up to their degree") {
  const Vec2 a{0.0, 0.0}, b{1.0, 0.0}, c{0.0, 1.0};
  for (int d = 1; d <= 8; ++d) {
    for (int p = 0; p + 0 <= d; ++p)
      for (int q = 0; p + q <= d; ++q) {
        const double got = integrate_triangle(
            [p, q](double x, double y) { return std::pow(x, p) * std::pow(y, q); }, a, b, c, d);
        CHECK(got == doctest::Approx(triangle_monomial(p, q)).epsilon(1e-12));
      }
  }
}

TEST_CASE("triangle rule weights sum to the reference area") {
  for (int d = 1; d <= 8; ++d) {
    const QuadratureRule& r = triangle_rule(d);
    const double sum = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("triangle integration is invariant under affine corner mappings") {
  const Vec2 a{0.2, 0.1}, b{1.3, 0.4}, c{0.6, 1.5};
  auto f = [](double x, double y) { return x * x * y + 3.0 * y * y - x + 1.0; };
  const double ref = integrate_triangle(f, a, b, c, 6);
  CHECK(integrate_triangle(f, b, c, a, 6) == doctest::Approx(ref).epsilon(1e-13));
  CHECK(integrate_triangle(f, c, a, b, 6) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("polygon integration over the unit square") {
  const Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(integrate_polygon([](double, double) { return 1.0; }, square, 2) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_polygon([](double x, double y) { return x * y; }, square, 2) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate_polygon([](double x, double y) { return x * (1 - x) * y * (1 - y); }, square,
                          4) == doctest::Approx(1.0 / 36.0).epsilon(1e-13));
}

TEST_CASE("polygon integration does not depend on the fan start vertex") {
  Polygon pent{{0.0, 0.0}, {1.0, 0.1}, {1.3, 0.9}, {0.5, 1.4}, {-0.2, 0.8}};
  auto f = [](double x, double y) { return std::exp(0.3 * x) * (1.0 + y * y); };
  const double ref = integrate_polygon(f, pent, 8);
  for (int s = 1; s < 5; ++s) {
    std::rotate(pent.begin(), pent.begin() + 1, pent.end());
    CHECK(integrate_polygon(f, pent, 8) == doctest::Approx(ref).epsilon(1e-12));
  }
}
