#pragma once

// Brute-force reference computations used by the unit and acceptance tests.
// None of these share code paths with the library's clipping or union-find.

#include "fibertrack/clip.hpp"
#include "fibertrack/datagen.hpp"
#include "fibertrack/extract.hpp"
#include "fibertrack/jacobi.hpp"
#include "fibertrack/tetra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

namespace ft = fibertrack;

inline ft::MultifieldFrame makeFrame(std::array<int, 3> dims, ft::Vec3 lo, ft::Vec3 hi,
                                     const std::vector<std::string>& names,
                                     const std::function<std::vector<double>(const ft::Vec3&)>& fn) {
  ft::MultifieldFrame frame;
  frame.grid.dims = dims;
  frame.grid.origin = lo;
  for (int a = 0; a < 3; ++a)
    frame.grid.spacing[a] = (hi[a] - lo[a]) / (dims[a] - 1);
  for (const auto& n : names)
    frame.fields.push_back({n, std::vector<double>(frame.grid.vertexCount())});
  for (std::size_t v = 0; v < frame.grid.vertexCount(); ++v) {
    const auto vals = fn(frame.grid.position(v));
    for (std::size_t k = 0; k < names.size(); ++k)
      frame.fields[k].values[v] = vals[k];
  }
  return frame;
}

/// 6 + 8 lattice neighbours: +-e for every non-zero e in {0,1}^3.
inline std::vector<std::array<int, 3>> freudenthalOffsets() {
  std::vector<std::array<int, 3>> out;
  for (int m = 1; m < 8; ++m) {
    const std::array<int, 3> e{m & 1, (m >> 1) & 1, (m >> 2) & 1};
    out.push_back(e);
    out.push_back({-e[0], -e[1], -e[2]});
  }
  return out;
}

/// Generic flood fill on a vertex lattice: label[v] >= 0 marks membership
/// class; returns number of components per class.
inline std::map<long, long> floodFill(std::array<int, 3> dims, const std::vector<long>& label) {
  const auto offs = freudenthalOffsets();
  const std::size_t n = label.size();
  std::vector<char> seen(n, 0);
  std::map<long, long> comps;
  std::vector<std::size_t> stack;
  auto idx = [&](int i, int j, int k) {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) * (static_cast<std::size_t>(j) +
                                                static_cast<std::size_t>(dims[1]) * k);
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] < 0 || seen[s])
      continue;
    ++comps[label[s]];
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(v % dims[0]);
      const int j = static_cast<int>((v / dims[0]) % dims[1]);
      const int k = static_cast<int>(v / (static_cast<std::size_t>(dims[0]) * dims[1]));
      for (const auto& o : offs) {
        const int a = i + o[0], b = j + o[1], c = k + o[2];
        if (a < 0 || b < 0 || c < 0 || a >= dims[0] || b >= dims[1] || c >= dims[2])
          continue;
        const std::size_t w = idx(a, b, c);
        if (!seen[w] && label[w] == label[s]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return comps;
}

/// Components of {f >= iso} on the vertex samples.
inline long superlevelComponents(const ft::GridDomain& grid, const std::vector<double>& f,
                                 double iso) {
  std::vector<long> label(f.size());
  for (std::size_t v = 0; v < f.size(); ++v)
    label[v] = f[v] >= iso ? 0 : -1;
  const auto c = floodFill(grid.dims, label);
  return c.empty() ? 0 : c.begin()->second;
}

/// Evaluates the coarse Freudenthal PL interpolant at a lattice point refined
/// by `R` (integer coordinates on the fine lattice).
inline double plValue(const ft::GridDomain& g, const std::vector<double>& f, int R,
                      std::array<int, 3> fine) {
  std::array<int, 3> cell{};
  std::array<double, 3> u{};
  for (int a = 0; a < 3; ++a) {
    cell[a] = std::min(fine[a] / R, g.dims[a] - 2);
    u[a] = static_cast<double>(fine[a] - cell[a] * R) / R;
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return u[a] > u[b]; });
  std::array<int, 3> corner = cell;
  double value = (1.0 - u[order[0]]) * f[g.index(corner[0], corner[1], corner[2])];
  for (int m = 0; m < 3; ++m) {
    corner[order[m]] += 1;
    const double w = u[order[m]] - (m < 2 ? u[order[m + 1]] : 0.0);
    value += w * f[g.index(corner[0], corner[1], corner[2])];
  }
  return value;
}

/// Per-bin component counts of the PL multifield sampled on a lattice refined
/// R times (the refined Freudenthal mesh nests inside the coarse one).
inline std::map<long, long> refinedBinComponents(const ft::MultifieldFrame& frame,
                                                 const ft::RangeQuantization& quant, int R) {
  const auto& g = frame.grid;
  const std::array<int, 3> fd{(g.dims[0] - 1) * R + 1, (g.dims[1] - 1) * R + 1,
                              (g.dims[2] - 1) * R + 1};
  std::vector<long> label(static_cast<std::size_t>(fd[0]) * fd[1] * fd[2], -1);
  std::size_t v = 0;
  for (int k = 0; k < fd[2]; ++k)
    for (int j = 0; j < fd[1]; ++j)
      for (int i = 0; i < fd[0]; ++i, ++v) {
        ft::BinIndex bin(frame.fieldCount());
        bool inside = true;
        for (std::size_t f = 0; f < frame.fieldCount() && inside; ++f) {
          bin[f] = quant.binOf(f, plValue(g, frame.fields[f].values, R, {i, j, k}));
          inside = bin[f] >= 0;
        }
        if (inside)
          label[v] = static_cast<long>(quant.linear(bin));
      }
  return floodFill(fd, label);
}

/// Thickness of a bin's slab: for each field, the value span the bin's
/// fragments actually reach divided by the steepest gradient among the tets
/// carrying them; the minimum over fields. Infinite for constant fields.
inline std::map<long, double> binThickness(const ft::MultifieldFrame& frame,
                                           const ft::RangeQuantization& quant) {
  const auto topo = ft::buildTopology(frame.grid);
  const std::size_t r = frame.fieldCount();
  struct Acc {
    std::vector<double> fmin, fmax, gmax;
  };
  std::map<long, Acc> acc;
  ft::Tetrahedron tet;
  for (std::size_t t = 0; t < topo.tetCount(); ++t) {
    ft::loadTetrahedron(frame, topo.tets[t], tet);
    std::vector<double> grad(r);
    std::vector<std::pair<int, int>> ranges(r);
    for (std::size_t f = 0; f < r; ++f) {
      std::array<double, 4> vals{};
      for (int c = 0; c < 4; ++c)
        vals[c] = tet.value(f, c);
      const auto gv = ft::tetGradient(tet.corners, vals);
      grad[f] = std::sqrt(gv[0] * gv[0] + gv[1] * gv[1] + gv[2] * gv[2]);
      const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
      ranges[f] = ft::candidateBins(quant, f, *lo, *hi);
    }
    ft::BinIndex bin(r);
    std::function<void(std::size_t)> visit = [&](std::size_t f) {
      if (f == r) {
        const auto frag = ft::clipTetByBin(tet, t, bin, quant);
        if (!frag)
          return;
        auto& a = acc[static_cast<long>(quant.linear(bin))];
        if (a.fmin.empty()) {
          a.fmin.assign(r, std::numeric_limits<double>::infinity());
          a.fmax.assign(r, -std::numeric_limits<double>::infinity());
          a.gmax.assign(r, 0.0);
        }
        for (const auto& piece : frag->pieces)
          for (const auto& cv : piece)
            for (std::size_t k = 0; k < r; ++k) {
              a.fmin[k] = std::min(a.fmin[k], cv.f[k]);
              a.fmax[k] = std::max(a.fmax[k], cv.f[k]);
            }
        for (std::size_t k = 0; k < r; ++k)
          a.gmax[k] = std::max(a.gmax[k], grad[k]);
        return;
      }
      for (int i = ranges[f].first; i <= ranges[f].second; ++i) {
        bin[f] = i;
        visit(f + 1);
      }
    };
    visit(0);
  }
  std::map<long, double> out;
  for (const auto& [id, a] : acc) {
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < r; ++k)
      if (a.gmax[k] > 0.0)
        t = std::min(t, (a.fmax[k] - a.fmin[k]) / a.gmax[k]);
    out[id] = t;
  }
  return out;
}

/// Monte-Carlo estimate of the volume of {p in tet : lo <= f(p) <= hi} for a
/// linear f given at the corners. Returns (estimate, standard error).
inline std::pair<double, double> monteCarloVolume(const std::array<ft::Vec3, 4>& p,
                                                  const std::array<double, 4>& f, double lo,
                                                  double hi, std::size_t samples,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> ex(1.0);
  const double vol = ft::tetVolume(p[0], p[1], p[2], p[3]);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    // uniform barycentric coordinates via normalised exponentials
    std::array<double, 4> w{ex(rng), ex(rng), ex(rng), ex(rng)};
    const double sum = w[0] + w[1] + w[2] + w[3];
    double v = 0.0;
    for (int c = 0; c < 4; ++c)
      v += w[c] / sum * f[c];
    if (v >= lo && v <= hi)
      ++hits;
  }
  const double frac = static_cast<double>(hits) / samples;
  return {frac * vol, vol * std::sqrt(frac * (1.0 - frac) / samples)};
}

} // namespace oracle
