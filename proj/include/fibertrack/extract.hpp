#pragma once

#include "fibertrack/clip.hpp"
#include "fibertrack/quantization.hpp"
#include "fibertrack/tetra.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace fibertrack {

/// Quantized fiber-component counts and slab measures for one frame.
struct FiberComponentHistogram {
  struct Bin {
    std::size_t id = 0; // RangeQuantization::linear
    BinIndex index;
    std::int64_t count = 0;            // fiber components in the bin
    double measure = 0.0;              // total fragment volume
    bool singular = false;             // set by projectSingularBins
    std::int64_t singular_components = 0; // components touching a marked (singular) tet
  };

  RangeQuantization quantization;
  std::vector<Bin> bins; // occupied bins only, ascending id
  std::int64_t total_count = 0;
  double total_measure = 0.0;

  const Bin* find(std::size_t id) const;
  Bin* find(std::size_t id);
};

struct ExtractOptions {
  /// Optional per-tet flags; components containing a flagged tet are tallied
  /// in Bin::singular_components.
  std::span<const std::uint8_t> marked_tets{};
  /// Reuse a topology built for the frame's dims.
  const TetTopology* topology = nullptr;
};

/// Builds fragments for every (tet, bin) pair whose closed clip is non-empty,
/// joins same-bin fragments across facets whose clipped triangle is
/// non-empty, and counts the resulting components per bin.
FiberComponentHistogram extractFiberComponents(const MultifieldFrame& frame,
                                               const RangeQuantization& quant,
                                               const ExtractOptions& options = {});

/// Candidate bins of one field for a closed value interval, as [first, last].
std::pair<int, int> candidateBins(const RangeQuantization& quant, std::size_t field, double lo,
                                  double hi);

} // namespace fibertrack
