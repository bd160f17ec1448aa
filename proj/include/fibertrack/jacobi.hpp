#pragma once

#include "fibertrack/extract.hpp"
#include "fibertrack/quantization.hpp"
#include "fibertrack/tetra.hpp"

#include <cstdint>
#include <vector>

namespace fibertrack {

inline constexpr double kDefaultJacobiTau = 1e-6;

/// Mesh elements where the PL Jacobian loses rank.
struct JacobiElementSet {
  std::vector<std::uint32_t> tets;      // tet ids, ascending
  std::vector<std::uint32_t> triangles; // boundary facet ids (TetTopology::facets), ascending
  double tau = kDefaultJacobiTau;
};

struct SingularBinSet {
  std::vector<std::size_t> bins; // linear ids, ascending

  bool contains(std::size_t id) const;
  bool empty() const { return bins.empty(); }
  std::size_t size() const { return bins.size(); }
};

/// Gradient-rank test with relative tolerance tau. A tet (or boundary
/// triangle, using in-plane gradients) is singular when some field gradient
/// vanishes or the row-normalised r x d Jacobian has
/// sigma_min <= tau * sigma_max. For r = 2 this is |g1 x g2| <= tau |g1||g2|.
JacobiElementSet markSingularElements(const MultifieldFrame& frame, double tau,
                                      const TetTopology* topology = nullptr);

/// Rank test on explicit gradients (rows of a r x d Jacobian, d = 2 or 3).
/// `vanish` holds, per row, the magnitude at or below which that gradient
/// counts as zero.
bool rankDeficient(const std::vector<Vec3>& gradients, int dim, double tau,
                   const std::vector<double>& vanish);

/// Constant gradient of a linear function given by vertex values on a tet.
Vec3 tetGradient(const std::array<Vec3, 4>& p, const std::array<double, 4>& f);

/// In-plane gradient of a linear function on a triangle, in the local frame
/// (u, w) with u along p1 - p0. Third component is zero.
Vec3 triangleGradient(const std::array<Vec3, 3>& p, const std::array<double, 3>& f);

/// Marks every bin whose closed box meets the value range of a singular
/// element. If `hist` is given, its occupied bins get their singular flag set.
SingularBinSet projectSingularBins(const JacobiElementSet& jset, const MultifieldFrame& frame,
                                   const RangeQuantization& quant,
                                   FiberComponentHistogram* hist = nullptr,
                                   const TetTopology* topology = nullptr);

/// Per-tet 0/1 mask of a JacobiElementSet, for ExtractOptions::marked_tets.
std::vector<std::uint8_t> singularTetMask(const JacobiElementSet& jset, std::size_t tet_count);

} // namespace fibertrack
