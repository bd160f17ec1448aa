#include "fibertrack/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace fibertrack {

const FiberComponentHistogram::Bin* FiberComponentHistogram::find(std::size_t id) const {
  auto it = std::lower_bound(bins.begin(), bins.end(), id,
                             [](const Bin& b, std::size_t v) { return b.id < v; });
  return it != bins.end() && it->id == id ? &*it : nullptr;
}

FiberComponentHistogram::Bin* FiberComponentHistogram::find(std::size_t id) {
  return const_cast<Bin*>(std::as_const(*this).find(id));
}

std::pair<int, int> candidateBins(const RangeQuantization& quant, std::size_t field, double lo,
                                  double hi) {
  const auto& e = quant.edges(field);
  const double x = lo - kGeomEps * std::max(1.0, std::fabs(lo));
  const double y = hi + kGeomEps * std::max(1.0, std::fabs(hi));
  const int m = quant.binCount(field);
  // first bin whose upper edge reaches lo, last bin whose lower edge reaches hi
  int first = static_cast<int>(std::lower_bound(e.begin(), e.end(), x) - e.begin()) - 1;
  int last = static_cast<int>(std::upper_bound(e.begin(), e.end(), y) - e.begin()) - 1;
  first = std::clamp(first, 0, m - 1);
  last = std::clamp(last, 0, m - 1);
  return {first, last};
}

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x)
      x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::uint32_t> parent_;
};

} // namespace

FiberComponentHistogram extractFiberComponents(const MultifieldFrame& frame,
                                               const RangeQuantization& quant,
                                               const ExtractOptions& options) {
  frame.validate();
  const std::size_t r = frame.fieldCount();
  if (quant.fieldCount() != r)
    throw Error("quantization has " + std::to_string(quant.fieldCount()) + " fields, frame has " +
                std::to_string(r));
  if (r > kMaxFields)
    throw Error("too many fields for extraction (max " + std::to_string(kMaxFields) + ")");
  if (!quant.covers(fieldRangeBox(frame)))
    throw Error("quantization does not cover the frame's field ranges");

  TetTopology local;
  const TetTopology* topo = options.topology;
  if (topo == nullptr || topo->dims != frame.grid.dims) {
    local = buildTopology(frame.grid);
    topo = &local;
  }
  const std::size_t ntets = topo->tetCount();
  if (!options.marked_tets.empty() && options.marked_tets.size() != ntets)
    throw Error("marked tet mask does not match the mesh");

  // Stage 1: fragments, grouped by tet in ascending bin id.
  std::vector<std::uint32_t> tetOffset(ntets + 1, 0);
  std::vector<std::size_t> nodeBin;
  std::vector<double> nodeVolume;
  nodeBin.reserve(ntets * 4);
  nodeVolume.reserve(ntets * 4);

  Tetrahedron tet;
  TetClipper clipper;
  BinBox box;
  box.fields = r;
  std::vector<std::pair<int, int>> range(r);
  std::vector<int> idx(r);
  std::vector<std::size_t> stride(r, 1);
  for (std::size_t k = 1; k < r; ++k)
    stride[k] = stride[k - 1] * static_cast<std::size_t>(quant.binCount(k - 1));

  for (std::size_t t = 0; t < ntets; ++t) {
    loadTetrahedron(frame, topo->tets[t], tet);
    for (std::size_t k = 0; k < r; ++k) {
      const double* v = &tet.values[4 * k];
      const double lo = std::min(std::min(v[0], v[1]), std::min(v[2], v[3]));
      const double hi = std::max(std::max(v[0], v[1]), std::max(v[2], v[3]));
      range[k] = candidateBins(quant, k, lo, hi);
      idx[k] = range[k].first;
    }
    // odometer with field 0 fastest yields ascending linear ids
    while (true) {
      std::size_t id = 0;
      for (std::size_t k = 0; k < r; ++k) {
        box.lo[k] = quant.lower(k, idx[k]);
        box.hi[k] = quant.upper(k, idx[k]);
        box.shared_lower[k] = idx[k] > 0;
        id += stride[k] * static_cast<std::size_t>(idx[k]);
      }
      if (clipper.clip(tet, box)) {
        nodeBin.push_back(id);
        nodeVolume.push_back(clipper.volume());
      }
      std::size_t k = 0;
      for (; k < r; ++k) {
        if (idx[k] < range[k].second) {
          ++idx[k];
          break;
        }
        idx[k] = range[k].first;
      }
      if (k == r)
        break;
    }
    tetOffset[t + 1] = static_cast<std::uint32_t>(nodeBin.size());
  }
  if (nodeBin.size() >= UINT32_MAX)
    throw Error("too many fragments");

  // Stage 2: join same-bin fragments across shared facets.
  UnionFind uf(nodeBin.size());
  FacetValues fv;
  fv.fields = r;
  for (const auto& facet : topo->facets) {
    if (facet.boundary())
      continue;
    std::uint32_t a = tetOffset[facet.tet_a], aEnd = tetOffset[facet.tet_a + 1];
    std::uint32_t b = tetOffset[facet.tet_b], bEnd = tetOffset[facet.tet_b + 1];
    bool loaded = false;
    while (a < aEnd && b < bEnd) {
      if (nodeBin[a] < nodeBin[b]) {
        ++a;
      } else if (nodeBin[b] < nodeBin[a]) {
        ++b;
      } else {
        if (uf.find(a) != uf.find(b)) {
          if (!loaded) {
            for (int v = 0; v < 3; ++v)
              for (std::size_t k = 0; k < r; ++k)
                fv.f[v][k] = frame.fields[k].values[facet.vertices[v]];
            loaded = true;
          }
          const BinIndex bin = quant.unravel(nodeBin[a]);
          for (std::size_t k = 0; k < r; ++k) {
            box.lo[k] = quant.lower(k, bin[k]);
            box.hi[k] = quant.upper(k, bin[k]);
          }
          if (facetFeasible(fv, box))
            uf.unite(a, b);
        }
        ++a;
        ++b;
      }
    }
  }

  // Stage 3: count components and measure per bin.
  std::vector<std::uint8_t> rootMarked;
  if (!options.marked_tets.empty()) {
    rootMarked.assign(nodeBin.size(), 0);
    for (std::size_t t = 0; t < ntets; ++t)
      if (options.marked_tets[t])
        for (std::uint32_t n = tetOffset[t]; n < tetOffset[t + 1]; ++n)
          rootMarked[uf.find(n)] = 1;
  }

  FiberComponentHistogram hist;
  hist.quantization = quant;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::uint32_t n = 0; n < nodeBin.size(); ++n) {
    auto [it, inserted] = slot.try_emplace(nodeBin[n], hist.bins.size());
    if (inserted) {
      FiberComponentHistogram::Bin b;
      b.id = nodeBin[n];
      hist.bins.push_back(std::move(b));
    }
    auto& bin = hist.bins[it->second];
    bin.measure += nodeVolume[n];
    if (uf.find(n) == n) {
      ++bin.count;
      if (!rootMarked.empty() && rootMarked[n])
        ++bin.singular_components;
    }
  }
  std::sort(hist.bins.begin(), hist.bins.end(),
            [](const auto& x, const auto& y) { return x.id < y.id; });
  for (auto& b : hist.bins) {
    b.index = quant.unravel(b.id);
    hist.total_count += b.count;
    hist.total_measure += b.measure;
  }
  return hist;
}

} // namespace fibertrack
