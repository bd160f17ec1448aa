#pragma once

// Exact clipping of piecewise-linear cells against range-space bins. Every
// field is linear on a tet, so each bin constraint lo <= f_k <= hi is a pair
// of half-spaces and the clipped region is a convex polytope. The polytope is
// carried as a list of (possibly degenerate) sub-tets, which gives the fan
// volume directly.

#include "fibertrack/quantization.hpp"
#include "fibertrack/tetra.hpp"

#include <optional>

namespace fibertrack {

inline constexpr std::size_t kMaxFields = 8;
/// Plane-side tolerance, relative to max(1, |bound|).
inline constexpr double kGeomEps = 1e-12;

struct ClipVertex {
  Vec3 p{};
  std::array<double, kMaxFields> f{};
};
using ClipTet = std::array<ClipVertex, 4>;

/// Closed per-field bounds of one bin.
struct BinBox {
  std::array<double, kMaxFields> lo{};
  std::array<double, kMaxFields> hi{};
  std::array<bool, kMaxFields> shared_lower{}; // lower edge is another bin's upper edge
  std::size_t fields = 0;

  static BinBox of(const BinIndex& bin, const RangeQuantization& quant);
};

struct FragmentCell {
  std::size_t tet = 0;
  BinIndex bin;
  std::vector<ClipTet> pieces; // convex polytope as a union of sub-tets
  double volume = 0.0;
};

/// Allocation-free clipper reused across many (tet, bin) pairs.
class TetClipper {
public:
  /// Clips `tet` to `box`. Returns false when the closed region is empty or
  /// lies entirely on a shared lower bin edge (it then belongs to the bin
  /// below). On success `pieces()` holds the polytope.
  bool clip(const Tetrahedron& tet, const BinBox& box);
  const std::vector<ClipTet>& pieces() const { return current_; }
  double volume() const;

private:
  void clipPlane(std::size_t field, double bound, bool lower);
  std::vector<ClipTet> current_;
  std::vector<ClipTet> next_;
  std::size_t fields_ = 0;
};

std::optional<FragmentCell> clipTetByBin(const Tetrahedron& tet, std::size_t tet_id,
                                         const BinIndex& bin, const RangeQuantization& quant);

/// Field values at the three corners of a facet.
struct FacetValues {
  std::array<std::array<double, kMaxFields>, 3> f{};
  std::size_t fields = 0;
};

/// True iff some point of the triangle has every field inside the closed bin.
bool facetFeasible(const FacetValues& tri, const BinBox& box);
bool facetFeasible(const FacetValues& tri, const BinIndex& bin, const RangeQuantization& quant);

} // namespace fibertrack
