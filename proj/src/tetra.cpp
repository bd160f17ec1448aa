#include "fibertrack/tetra.hpp"

#include <algorithm>
#include <cmath>

namespace fibertrack {

double tetVolume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const Vec3 v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  const Vec3 w{d[0] - a[0], d[1] - a[1], d[2] - a[2]};
  const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
                     u[2] * (v[0] * w[1] - v[1] * w[0]);
  return std::fabs(det) / 6.0;
}

double Tetrahedron::volume() const {
  return tetVolume(corners[0], corners[1], corners[2], corners[3]);
}

TetTopology buildTopology(const GridDomain& grid) {
  grid.validate();
  if (grid.vertexCount() > UINT32_MAX)
    throw Error("grid too large for 32-bit vertex ids");
  TetTopology topo;
  topo.dims = grid.dims;
  topo.tets.reserve(grid.cellCount() * 6);
  for (int k = 0; k + 1 < grid.dims[2]; ++k)
    for (int j = 0; j + 1 < grid.dims[1]; ++j)
      for (int i = 0; i + 1 < grid.dims[0]; ++i)
        for (const auto& order : kKuhnOrders) {
          std::array<int, 3> c{i, j, k};
          std::array<std::uint32_t, 4> ids{};
          ids[0] = static_cast<std::uint32_t>(grid.index(c[0], c[1], c[2]));
          for (int s = 0; s < 3; ++s) {
            ++c[order[s]];
            ids[s + 1] = static_cast<std::uint32_t>(grid.index(c[0], c[1], c[2]));
          }
          topo.tets.push_back(ids);
        }

  struct Entry {
    std::array<std::uint32_t, 3> key;
    std::int32_t tet;
  };
  std::vector<Entry> entries;
  entries.reserve(topo.tets.size() * 4);
  for (std::size_t t = 0; t < topo.tets.size(); ++t) {
    const auto& v = topo.tets[t];
    for (int skip = 0; skip < 4; ++skip) {
      std::array<std::uint32_t, 3> tri{};
      int n = 0;
      for (int q = 0; q < 4; ++q)
        if (q != skip)
          tri[n++] = v[q];
      std::sort(tri.begin(), tri.end());
      entries.push_back({tri, static_cast<std::int32_t>(t)});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key < b.key : a.tet < b.tet;
  });
  for (std::size_t e = 0; e < entries.size();) {
    std::size_t f = e + 1;
    while (f < entries.size() && entries[f].key == entries[e].key)
      ++f;
    if (f - e > 2)
      throw Error("tetrahedralization produced a non-manifold facet");
    TetTopology::Facet facet{entries[e].key, entries[e].tet, f - e == 2 ? entries[e + 1].tet : -1};
    if (facet.boundary())
      topo.boundary_facets.push_back(static_cast<std::uint32_t>(topo.facets.size()));
    topo.facets.push_back(facet);
    e = f;
  }
  return topo;
}

void loadTetrahedron(const MultifieldFrame& frame, const std::array<std::uint32_t, 4>& ids,
                     Tetrahedron& out) {
  out.vertex_ids = ids;
  const std::size_t r = frame.fields.size();
  out.values.resize(4 * r);
  for (int v = 0; v < 4; ++v) {
    out.corners[v] = frame.grid.position(static_cast<std::size_t>(ids[v]));
    for (std::size_t k = 0; k < r; ++k)
      out.values[4 * k + v] = frame.fields[k].values[ids[v]];
  }
}

std::vector<Tetrahedron> tetrahedralize(const MultifieldFrame& frame) {
  frame.validate();
  const TetTopology topo = buildTopology(frame.grid);
  std::vector<Tetrahedron> out(topo.tets.size());
  for (std::size_t t = 0; t < topo.tets.size(); ++t)
    loadTetrahedron(frame, topo.tets[t], out[t]);
  return out;
}

} // namespace fibertrack
