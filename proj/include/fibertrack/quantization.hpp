#pragma once

#include "fibertrack/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fibertrack {

/// Multi-index of a range-space bin, 0-based per field.
using BinIndex = std::vector<int>;

/// Per-field strictly increasing bin edges. Bin j of field k is
/// [edges[k][j], edges[k][j+1]), except the last bin, which is closed.
class RangeQuantization {
public:
  RangeQuantization() = default;
  explicit RangeQuantization(std::vector<std::vector<double>> edges);

  std::size_t fieldCount() const { return edges_.size(); }
  int binCount(std::size_t field) const { return static_cast<int>(edges_[field].size()) - 1; }
  std::size_t totalBins() const;
  const std::vector<double>& edges(std::size_t field) const { return edges_[field]; }
  double lower(std::size_t field, int bin) const { return edges_[field][bin]; }
  double upper(std::size_t field, int bin) const { return edges_[field][bin + 1]; }
  /// Nominal (first-bin) width of a field's partition.
  double width(std::size_t field) const { return edges_[field][1] - edges_[field][0]; }

  /// Bin holding `value` under the half-open rule, or -1 outside the range.
  int binOf(std::size_t field, double value) const;

  /// Mixed-radix linear id, field 0 fastest.
  std::size_t linear(const BinIndex& bin) const;
  BinIndex unravel(std::size_t id) const;
  bool valid(const BinIndex& bin) const;

  bool covers(const std::vector<std::pair<double, double>>& ranges) const;

  bool operator==(const RangeQuantization& other) const { return edges_ == other.edges_; }

  std::vector<std::string> warnings;

private:
  std::vector<std::vector<double>> edges_;
};

/// Either slab widths or bin counts, one entry per field.
struct QuantizationRequest {
  std::vector<double> slab_widths;
  std::vector<int> bin_counts;
};

/// One uniform partition per field covering the union of that field's range
/// over all frames, anchored at the global minimum.
RangeQuantization buildQuantization(const FrameSeries& series, const QuantizationRequest& request);
RangeQuantization buildQuantization(const std::vector<MultifieldFrame>& frames,
                                    const QuantizationRequest& request);

} // namespace fibertrack
