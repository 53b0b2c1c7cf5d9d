#include <doctest.h>

#include <cmath>

#include "nfvm/mesh.hpp"

using namespace nfvm;

namespace {
const Rect kUnit{0.0, 1.0, 0.0, 1.0};
}

TEST_CASE("structured triangulation has the expected entity counts") {
  {
    TriMesh m = build_structured_tri_mesh(2, 2, kUnit);
    CHECK(m.n_vertices() == 9);
    CHECK(m.n_triangles() == 8);
    CHECK(m.n_edges() == 16);
  }
  {
    TriMesh m = build_structured_tri_mesh(1, 3, kUnit);
    CHECK(m.n_edges() == 13);
  }
  {
    TriMesh m = build_structured_tri_mesh(1, 1, kUnit);
    CHECK(m.n_triangles() == 2);
    CHECK(m.n_edges() == 5);
    CHECK(m.n_vertices() - m.n_edges() + m.n_triangles() == 1);
  }
}

TEST_CASE("edge count formula 3MN+M+N holds for small meshes") {
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; n <= 8; ++n) {
      TriMesh mesh = build_structured_tri_mesh(m, n, kUnit);
      CHECK(mesh.n_edges() == 3 * m * n + m + n);
      CHECK(mesh.n_vertices() - mesh.n_edges() + mesh.n_triangles() == 1);
    }
}

TEST_CASE("triangulation geometry invariants") {
  for (auto [m, n] : {std::pair{2, 2}, {1, 3}, {3, 5}, {1, 20}}) {
    TriMesh mesh = build_structured_tri_mesh(m, n, kUnit);
    double total = 0.0;
    for (const Triangle& t : mesh.triangles) {
      CHECK(t.area > 0.0);
      total += t.area;
    }
    CHECK(total == doctest::Approx(kUnit.area()).epsilon(1e-12));
    int boundary = 0;
    for (const TriEdge& e : mesh.edges) {
      if (e.boundary) {
        CHECK(e.tri1 == kNoCell);
        ++boundary;
      } else {
        CHECK(e.tri0 != kNoCell);
        CHECK(e.tri1 != kNoCell);
      }
    }
    CHECK(boundary == 2 * (m + n));
  }
}

TEST_CASE("minimum angle matches atan(M/N) for the benchmark families") {
  CHECK(min_angle(build_structured_tri_mesh(2, 2, kUnit)) ==
        doctest::Approx(std::atan(1.0)).epsilon(1e-12));
  CHECK(min_angle(build_structured_tri_mesh(1, 3, kUnit)) ==
        doctest::Approx(std::atan(1.0 / 3.0)).epsilon(1e-12));
  CHECK(min_angle(build_structured_tri_mesh(1, 20, kUnit)) ==
        doctest::Approx(std::atan(1.0 / 20.0)).epsilon(1e-12));
  // orientation symmetry
  CHECK(min_angle(build_structured_tri_mesh(20, 1, kUnit)) ==
        doctest::Approx(std::atan(1.0 / 20.0)).epsilon(1e-12));
}

TEST_CASE("rectangle mesh cells and shape ratios") {
  {
    RectMesh m = build_rect_mesh(4, 4, kUnit);
    CHECK(m.n_cells() == 16);
    for (const RectCell& c : m.cells) CHECK(c.shape_ratio() == doctest::Approx(1.0));
  }
  {
    RectMesh m = build_rect_mesh(2, 4, kUnit);
    for (const RectCell& c : m.cells) CHECK(c.shape_ratio() == doctest::Approx(0.5));
  }
  {
    RectMesh m = build_rect_mesh(3, 3, Rect{0.0, 2.0, 0.0, 1.0});
    for (const RectCell& c : m.cells) {
      CHECK(c.hx == doctest::Approx(1.0 / 3.0));
      CHECK(c.hy == doctest::Approx(1.0 / 6.0));
      CHECK(c.shape_ratio() == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("rectangle mesh tiles the domain") {
  for (auto [m, n] : {std::pair{1, 1}, {4, 4}, {3, 7}}) {
    RectMesh mesh = build_rect_mesh(m, n, kUnit);
    double total = 0.0;
    for (const RectCell& c : mesh.cells) total += 4.0 * c.hx * c.hy;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mesh.n_vertices() == (m + 1) * (n + 1));
  }
}

TEST_CASE("degenerate domains are rejected") {
  CHECK_THROWS(build_structured_tri_mesh(2, 2, Rect{0.0, 0.0, 0.0, 1.0}));
  CHECK_THROWS(build_rect_mesh(2, 2, Rect{0.0, 1.0, 1.0, 1.0}));
}

TEST_CASE("vertex-cell adjacency is consistent") {
  RectMesh mesh = build_rect_mesh(3, 2, kUnit);
  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    for (int q = 0; q < 4; ++q) {
      const Index c = mesh.vertex_cells[v][q];
      if (c == kNoCell) continue;
      CHECK(mesh.cells[c].v[q] == v);
    }
  }
}
