#include "fibertrack/quantization.hpp"

#include <algorithm>
#include <cmath>

namespace fibertrack {

RangeQuantization::RangeQuantization(std::vector<std::vector<double>> edges)
    : edges_(std::move(edges)) {
  if (edges_.empty())
    throw Error("quantization needs at least one field");
  for (const auto& e : edges_) {
    if (e.size() < 2)
      throw Error("each field needs at least one bin");
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!std::isfinite(e[j]))
        throw Error("bin edges must be finite");
      if (j > 0 && !(e[j] > e[j - 1]))
        throw Error("bin edges must be strictly increasing");
    }
  }
}

std::size_t RangeQuantization::totalBins() const {
  std::size_t n = 1;
  for (std::size_t k = 0; k < edges_.size(); ++k)
    n *= static_cast<std::size_t>(binCount(k));
  return n;
}

int RangeQuantization::binOf(std::size_t field, double value) const {
  const auto& e = edges_[field];
  if (value < e.front() || value > e.back())
    return -1;
  const auto it = std::upper_bound(e.begin(), e.end(), value);
  const int j = static_cast<int>(it - e.begin()) - 1;
  return std::min(j, binCount(field) - 1);
}

std::size_t RangeQuantization::linear(const BinIndex& bin) const {
  std::size_t id = 0;
  for (std::size_t k = edges_.size(); k-- > 0;)
    id = id * static_cast<std::size_t>(binCount(k)) + static_cast<std::size_t>(bin[k]);
  return id;
}

BinIndex RangeQuantization::unravel(std::size_t id) const {
  BinIndex bin(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto m = static_cast<std::size_t>(binCount(k));
    bin[k] = static_cast<int>(id % m);
    id /= m;
  }
  return bin;
}

bool RangeQuantization::valid(const BinIndex& bin) const {
  if (bin.size() != edges_.size())
    return false;
  for (std::size_t k = 0; k < bin.size(); ++k)
    if (bin[k] < 0 || bin[k] >= binCount(k))
      return false;
  return true;
}

bool RangeQuantization::covers(const std::vector<std::pair<double, double>>& ranges) const {
  if (ranges.size() != edges_.size())
    return false;
  for (std::size_t k = 0; k < ranges.size(); ++k)
    if (ranges[k].first < edges_[k].front() || ranges[k].second > edges_[k].back())
      return false;
  return true;
}

RangeQuantization buildQuantization(const FrameSeries& series, const QuantizationRequest& request) {
  return buildQuantization(series.frames, request);
}

RangeQuantization buildQuantization(const std::vector<MultifieldFrame>& frames,
                                    const QuantizationRequest& request) {
  if (frames.empty())
    throw Error("cannot quantize an empty frame list");
  const std::size_t r = frames.front().fieldCount();
  const bool byWidth = !request.slab_widths.empty();
  if (byWidth == !request.bin_counts.empty())
    throw Error("give exactly one of slab widths or bin counts");
  if (byWidth && request.slab_widths.size() != r)
    throw Error("need one slab width per field (" + std::to_string(r) + ")");
  if (!byWidth && request.bin_counts.size() != r)
    throw Error("need one bin count per field (" + std::to_string(r) + ")");

  std::vector<std::pair<double, double>> range(r, {INFINITY, -INFINITY});
  for (const auto& f : frames) {
    if (f.fieldCount() != r)
      throw Error("frames disagree on field count");
    const auto box = fieldRangeBox(f);
    for (std::size_t k = 0; k < r; ++k) {
      range[k].first = std::min(range[k].first, box[k].first);
      range[k].second = std::max(range[k].second, box[k].second);
    }
  }

  std::vector<std::string> warnings;
  std::vector<std::vector<double>> edges(r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto [lo, hi] = range[k];
    const std::string& name = frames.front().fields[k].name;
    if (byWidth) {
      const double w = request.slab_widths[k];
      if (!(w > 0.0) || !std::isfinite(w))
        throw Error("slab widths must be positive");
      if (hi == lo) {
        warnings.push_back("field '" + name + "' is constant; using a single bin of width " +
                           std::to_string(w));
        edges[k] = {lo, lo + w};
        continue;
      }
      auto m = static_cast<long long>(std::ceil((hi - lo) / w));
      m = std::max(m, 1LL);
      while (lo + static_cast<double>(m) * w < hi)
        ++m;
      if (m > 10'000'000)
        throw Error("slab width too small for field '" + name + "'");
      edges[k].resize(static_cast<std::size_t>(m) + 1);
      for (long long j = 0; j <= m; ++j)
        edges[k][static_cast<std::size_t>(j)] = lo + static_cast<double>(j) * w;
    } else {
      const int m = request.bin_counts[k];
      if (m < 1)
        throw Error("bin counts must be >= 1");
      double span = hi - lo;
      if (span == 0.0) {
        warnings.push_back("field '" + name + "' is constant; using a unit-span partition");
        span = 1.0;
      }
      edges[k].resize(static_cast<std::size_t>(m) + 1);
      for (int j = 0; j <= m; ++j)
        edges[k][static_cast<std::size_t>(j)] = lo + span * j / m;
      edges[k].back() = hi > lo ? hi : lo + span;
    }
  }
  RangeQuantization q(std::move(edges));
  q.warnings = std::move(warnings);
  return q;
}

} // namespace fibertrack
