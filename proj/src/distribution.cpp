#include "fibertrack/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace fibertrack {

PmfMode parsePmfMode(std::string_view text) {
  if (text == "count")
    return PmfMode::Count;
  if (text == "measure")
    return PmfMode::Measure;
  throw Error("unknown pmf mode '" + std::string(text) + "' (expected count|measure)");
}

std::string_view pmfModeName(PmfMode mode) {
  return mode == PmfMode::Count ? "count" : "measure";
}

SingularBinSet FiberDistribution::singularBins() const {
  SingularBinSet s;
  for (std::size_t i = 0; i < singular.size(); ++i)
    if (singular[i])
      s.bins.push_back(i);
  return s;
}

FiberDistribution toDistribution(const FiberComponentHistogram& hist, PmfMode mode) {
  FiberDistribution d;
  d.quantization = hist.quantization;
  d.mode = mode;
  const std::size_t n = hist.quantization.totalBins();
  d.pmf.assign(n, 0.0);
  d.singular.assign(n, 0);
  double total = 0.0;
  for (const auto& b : hist.bins)
    total += mode == PmfMode::Count ? static_cast<double>(b.count) : b.measure;
  if (!(total > 0.0))
    throw Error(std::string("histogram has zero total ") +
                (mode == PmfMode::Count ? "component count" : "measure"));
  for (const auto& b : hist.bins) {
    if (b.id >= n)
      throw Error("histogram bin id outside its quantization");
    const double w = mode == PmfMode::Count ? static_cast<double>(b.count) : b.measure;
    d.pmf[b.id] = w / total;
    d.singular[b.id] = b.singular ? 1 : 0;
  }
  return d;
}

namespace {

struct FieldUnion {
  std::vector<double> edges;
  int shift_a = 0; // union bin = own bin + shift
  int shift_b = 0;
};

FieldUnion unionField(const std::vector<double>& ea, const std::vector<double>& eb) {
  const double wa = ea[1] - ea[0];
  const double wb = eb[1] - eb[0];
  const double scale = std::max({1.0, std::fabs(ea.front()), std::fabs(eb.front()),
                                 std::fabs(ea.back()), std::fabs(eb.back())});
  const double tol = 1e-9 * scale;
  if (std::fabs(wa - wb) > tol)
    throw Error("cannot align distributions: bin widths differ");
  const double offset = (eb.front() - ea.front()) / wa;
  const long long n = std::llround(offset);
  if (std::fabs(eb.front() - ea.front() - static_cast<double>(n) * wa) > tol)
    throw Error("cannot align distributions: bin edges are offset by a fractional width");

  const long long ma = static_cast<long long>(ea.size()) - 1;
  const long long mb = static_cast<long long>(eb.size()) - 1;
  const long long first = std::min(0LL, n);
  const long long last = std::max(ma, n + mb); // exclusive bin end = edge index
  FieldUnion u;
  u.shift_a = static_cast<int>(-first);
  u.shift_b = static_cast<int>(n - first);
  u.edges.resize(static_cast<std::size_t>(last - first + 1));
  for (long long e = first; e <= last; ++e) {
    double v;
    if (e >= 0 && e <= ma) {
      v = ea[static_cast<std::size_t>(e)];
      const long long eb_i = e - n;
      if (eb_i >= 0 && eb_i <= mb && std::fabs(eb[static_cast<std::size_t>(eb_i)] - v) > tol)
        throw Error("cannot align distributions: overlapping bins do not coincide");
    } else if (e - n >= 0 && e - n <= mb) {
      v = eb[static_cast<std::size_t>(e - n)];
    } else {
      v = ea.front() + static_cast<double>(e) * wa;
    }
    u.edges[static_cast<std::size_t>(e - first)] = v;
  }
  return u;
}

FiberDistribution reindex(const FiberDistribution& d, const RangeQuantization& target,
                          const std::vector<int>& shift) {
  FiberDistribution out;
  out.quantization = target;
  out.mode = d.mode;
  out.pmf.assign(target.totalBins(), 0.0);
  out.singular.assign(target.totalBins(), 0);
  for (std::size_t id = 0; id < d.pmf.size(); ++id) {
    if (d.pmf[id] == 0.0 && !d.singular[id])
      continue;
    BinIndex bin = d.quantization.unravel(id);
    for (std::size_t k = 0; k < bin.size(); ++k)
      bin[k] += shift[k];
    const std::size_t nid = target.linear(bin);
    out.pmf[nid] = d.pmf[id];
    out.singular[nid] = d.singular[id];
  }
  return out;
}

} // namespace

std::pair<FiberDistribution, FiberDistribution> alignDistributions(const FiberDistribution& a,
                                                                   const FiberDistribution& b) {
  if (a.quantization.fieldCount() != b.quantization.fieldCount())
    throw Error("cannot align distributions with different field counts");
  if (a.quantization == b.quantization)
    return {a, b};
  const std::size_t r = a.quantization.fieldCount();
  std::vector<std::vector<double>> edges(r);
  std::vector<int> shiftA(r), shiftB(r);
  for (std::size_t k = 0; k < r; ++k) {
    auto u = unionField(a.quantization.edges(k), b.quantization.edges(k));
    edges[k] = std::move(u.edges);
    shiftA[k] = u.shift_a;
    shiftB[k] = u.shift_b;
  }
  const RangeQuantization target(std::move(edges));
  return {reindex(a, target, shiftA), reindex(b, target, shiftB)};
}

} // namespace fibertrack
