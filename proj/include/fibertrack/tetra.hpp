#pragma once

#include "fibertrack/grid.hpp"

#include <cstdint>
#include <vector>

namespace fibertrack {

/// One tet of the Freudenthal (Kuhn) split, with its per-field vertex values.
/// Vertices follow the monotone path v0 -> v3 along the cell's main diagonal.
struct Tetrahedron {
  std::array<std::uint32_t, 4> vertex_ids{};
  std::array<Vec3, 4> corners{};
  std::vector<double> values; // field-major: values[4*k + v]

  double value(std::size_t field, int vertex) const { return values[4 * field + vertex]; }
  double volume() const;
};

/// Mesh connectivity, identical for every frame that shares grid dims.
struct TetTopology {
  struct Facet {
    std::array<std::uint32_t, 3> vertices; // sorted ascending
    std::int32_t tet_a;
    std::int32_t tet_b; // -1 on the domain boundary
    bool boundary() const { return tet_b < 0; }
  };

  std::array<int, 3> dims{};
  std::vector<std::array<std::uint32_t, 4>> tets; // tet id = 6 * cell + permutation
  std::vector<Facet> facets;
  std::vector<std::uint32_t> boundary_facets; // indices into facets

  std::size_t tetCount() const { return tets.size(); }
};

/// The six axis orders of a Kuhn cell; tet p walks axes kKuhnOrders[p][0..2].
inline constexpr std::array<std::array<int, 3>, 6> kKuhnOrders{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

TetTopology buildTopology(const GridDomain& grid);

/// Splits every cubic cell into 6 tets sharing the (0,0,0)-(1,1,1) diagonal.
std::vector<Tetrahedron> tetrahedralize(const MultifieldFrame& frame);

/// Fills `out` with the tet's corners and field values without reallocating.
void loadTetrahedron(const MultifieldFrame& frame, const std::array<std::uint32_t, 4>& ids,
                     Tetrahedron& out);

double tetVolume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

} // namespace fibertrack
