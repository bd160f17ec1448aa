#include "fibertrack/tetra.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

using namespace fibertrack;

namespace {

MultifieldFrame linearFrame(std::array<int, 3> dims, Vec3 spacing) {
  MultifieldFrame f;
  f.grid.dims = dims;
  f.grid.spacing = spacing;
  f.fields.push_back({"x", std::vector<double>(f.grid.vertexCount())});
  for (std::size_t v = 0; v < f.grid.vertexCount(); ++v)
    f.fields[0].values[v] = f.grid.position(v)[0];
  return f;
}

} // namespace

TEST_CASE("one cube splits into six equal tets sharing the main diagonal") {
  const auto frame = linearFrame({2, 2, 2}, {1.0, 1.0, 1.0});
  const auto tets = tetrahedralize(frame);
  REQUIRE(tets.size() == 6);
  double total = 0.0;
  for (const auto& t : tets) {
    CHECK(t.volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(t.vertex_ids[0] == 0);
    CHECK(t.vertex_ids[3] == 7);
    total += t.volume();
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tet count and volumes on the default synthetic grid") {
  GridDomain g;
  g.dims = {20, 20, 20};
  g.spacing = {10.0 / 19, 10.0 / 19, 10.0 / 19};
  const auto topo = buildTopology(g);
  CHECK(topo.tetCount() == 41154);
  const auto frame = linearFrame(g.dims, g.spacing);
  double total = 0.0;
  for (const auto& t : tetrahedralize(frame))
    total += t.volume();
  CHECK(total == doctest::Approx(g.volume()).epsilon(1e-12));
}

TEST_CASE("facets are shared by two tets or lie on the boundary") {
  GridDomain g;
  g.dims = {4, 3, 5};
  const auto topo = buildTopology(g);
  const std::size_t T = topo.tetCount();
  // every tet has 4 facets; interior ones are counted twice
  std::size_t interior = 0, boundary = 0;
  std::vector<int> perTet(T, 0);
  for (const auto& f : topo.facets) {
    CHECK(f.vertices[0] < f.vertices[1]);
    CHECK(f.vertices[1] < f.vertices[2]);
    ++perTet[f.tet_a];
    if (f.boundary()) {
      ++boundary;
    } else {
      ++interior;
      ++perTet[f.tet_b];
    }
  }
  for (int c : perTet)
    CHECK(c == 4);
  CHECK(2 * interior + boundary == 4 * T);
  // each boundary square splits into 2 triangles
  const std::size_t squares = 2 * ((3 * 2) + (3 * 4) + (2 * 4));
  CHECK(boundary == 2 * squares);
  CHECK(topo.boundary_facets.size() == boundary);
}

TEST_CASE("boundary triangles lie on the domain faces") {
  GridDomain g;
  g.dims = {3, 3, 3};
  const auto topo = buildTopology(g);
  for (auto fid : topo.boundary_facets) {
    const auto& f = topo.facets[fid];
    bool onFace = false;
    for (int a = 0; a < 3; ++a)
      for (int side : {0, g.dims[a] - 1}) {
        bool all = true;
        for (auto v : f.vertices)
          all = all && g.coords(v)[a] == side;
        onFace = onFace || all;
      }
    CHECK(onFace);
  }
}

TEST_CASE("tet values follow the field layout") {
  auto frame = linearFrame({3, 2, 2}, {0.5, 1.0, 2.0});
  frame.fields.push_back({"twice", frame.fields[0].values});
  for (auto& v : frame.fields[1].values)
    v *= 2.0;
  for (const auto& t : tetrahedralize(frame))
    for (int c = 0; c < 4; ++c) {
      CHECK(t.value(0, c) == t.corners[c][0]);
      CHECK(t.value(1, c) == 2.0 * t.corners[c][0]);
    }
}
