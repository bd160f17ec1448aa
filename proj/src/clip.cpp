#include "fibertrack/clip.hpp"

#include <algorithm>
#include <cmath>

namespace fibertrack {

namespace {

inline double tolerance(double bound) {
  return kGeomEps * std::max(1.0, std::fabs(bound));
}

inline ClipVertex cut(const ClipVertex& in, const ClipVertex& out, double s_in, double s_out,
                      std::size_t r) {
  double t = s_in / (s_in - s_out);
  t = std::clamp(t, 0.0, 1.0);
  ClipVertex v;
  for (int a = 0; a < 3; ++a)
    v.p[a] = in.p[a] + t * (out.p[a] - in.p[a]);
  for (std::size_t k = 0; k < r; ++k)
    v.f[k] = in.f[k] + t * (out.f[k] - in.f[k]);
  return v;
}

} // namespace

BinBox BinBox::of(const BinIndex& bin, const RangeQuantization& quant) {
  if (!quant.valid(bin))
    throw Error("bin index out of range for quantization");
  if (quant.fieldCount() > kMaxFields)
    throw Error("too many fields for clipping (max " + std::to_string(kMaxFields) + ")");
  BinBox box;
  box.fields = quant.fieldCount();
  for (std::size_t k = 0; k < box.fields; ++k) {
    box.lo[k] = quant.lower(k, bin[k]);
    box.hi[k] = quant.upper(k, bin[k]);
    box.shared_lower[k] = bin[k] > 0;
  }
  return box;
}

void TetClipper::clipPlane(std::size_t field, double bound, bool lower) {
  const double eps = tolerance(bound);
  next_.clear();
  for (const ClipTet& t : current_) {
    std::array<double, 4> s{};
    std::array<int, 4> in{}, out{};
    int nin = 0, nout = 0;
    for (int v = 0; v < 4; ++v) {
      s[v] = lower ? t[v].f[field] - bound : bound - t[v].f[field];
      if (s[v] >= -eps)
        in[nin++] = v;
      else
        out[nout++] = v;
    }
    if (nout == 0) {
      next_.push_back(t);
      continue;
    }
    if (nin == 0)
      continue;
    const std::size_t r = fields_;
    auto edge = [&](int a, int b) { return cut(t[a], t[b], s[a], s[b], r); };
    if (nin == 1) {
      const int a = in[0];
      next_.push_back({t[a], edge(a, out[0]), edge(a, out[1]), edge(a, out[2])});
    } else if (nin == 2) {
      // wedge: triangles (a, ac, ad) and (b, bc, bd) joined along a-b
      const int a = in[0], b = in[1], c = out[0], d = out[1];
      const ClipVertex ac = edge(a, c), ad = edge(a, d), bc = edge(b, c), bd = edge(b, d);
      next_.push_back({t[a], ac, ad, bd});
      next_.push_back({t[a], ac, bc, bd});
      next_.push_back({t[a], t[b], bc, bd});
    } else {
      // prism: (a, b, c) and (ad, bd, cd)
      const int a = in[0], b = in[1], c = in[2], d = out[0];
      const ClipVertex ad = edge(a, d), bd = edge(b, d), cd = edge(c, d);
      next_.push_back({t[a], t[b], t[c], cd});
      next_.push_back({t[a], t[b], bd, cd});
      next_.push_back({t[a], ad, bd, cd});
    }
  }
  current_.swap(next_);
}

bool TetClipper::clip(const Tetrahedron& tet, const BinBox& box) {
  current_.clear();
  fields_ = box.fields;
  ClipTet start;
  for (int v = 0; v < 4; ++v) {
    start[v].p = tet.corners[v];
    for (std::size_t k = 0; k < box.fields; ++k)
      start[v].f[k] = tet.value(k, v);
  }
  current_.push_back(start);
  for (std::size_t k = 0; k < box.fields; ++k) {
    double fmin = tet.value(k, 0), fmax = fmin;
    for (int v = 1; v < 4; ++v) {
      fmin = std::min(fmin, tet.value(k, v));
      fmax = std::max(fmax, tet.value(k, v));
    }
    if (fmax < box.lo[k] - tolerance(box.lo[k]) || fmin > box.hi[k] + tolerance(box.hi[k])) {
      current_.clear();
      return false;
    }
    if (fmin < box.lo[k])
      clipPlane(k, box.lo[k], true);
    if (fmax > box.hi[k])
      clipPlane(k, box.hi[k], false);
    if (current_.empty())
      return false;
  }
  for (std::size_t k = 0; k < box.fields; ++k) {
    if (!box.shared_lower[k])
      continue;
    const double limit = box.lo[k] + tolerance(box.lo[k]);
    bool onEdge = true;
    for (const ClipTet& t : current_) {
      for (const ClipVertex& v : t)
        if (v.f[k] > limit) {
          onEdge = false;
          break;
        }
      if (!onEdge)
        break;
    }
    if (onEdge) {
      current_.clear();
      return false;
    }
  }
  return true;
}

double TetClipper::volume() const {
  double vol = 0.0;
  for (const ClipTet& t : current_)
    vol += tetVolume(t[0].p, t[1].p, t[2].p, t[3].p);
  return vol;
}

std::optional<FragmentCell> clipTetByBin(const Tetrahedron& tet, std::size_t tet_id,
                                         const BinIndex& bin, const RangeQuantization& quant) {
  if (tet.values.size() != 4 * quant.fieldCount())
    throw Error("tetrahedron field count does not match quantization");
  TetClipper clipper;
  if (!clipper.clip(tet, BinBox::of(bin, quant)))
    return std::nullopt;
  FragmentCell cell;
  cell.tet = tet_id;
  cell.bin = bin;
  cell.pieces = clipper.pieces();
  cell.volume = clipper.volume();
  return cell;
}

bool facetFeasible(const FacetValues& tri, const BinBox& box) {
  // Sutherland-Hodgman in value space; positions are irrelevant to emptiness.
  using Point = std::array<double, kMaxFields>;
  std::array<Point, 64> buf_a{}, buf_b{};
  std::size_t n = 3;
  for (int v = 0; v < 3; ++v)
    buf_a[v] = tri.f[v];
  Point* poly = buf_a.data();
  Point* out = buf_b.data();
  for (std::size_t k = 0; k < box.fields; ++k) {
    for (int side = 0; side < 2; ++side) {
      const bool lower = side == 0;
      const double bound = lower ? box.lo[k] : box.hi[k];
      const double eps = tolerance(bound);
      auto sdist = [&](const Point& p) { return lower ? p[k] - bound : bound - p[k]; };
      std::size_t m = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        const double sa = sdist(a), sb = sdist(b);
        const bool ina = sa >= -eps, inb = sb >= -eps;
        if (m + 2 > buf_a.size())
          throw Error("facet clipping overflowed its vertex buffer");
        if (ina)
          out[m++] = a;
        if (ina != inb) {
          double t = std::clamp(sa / (sa - sb), 0.0, 1.0);
          Point c{};
          for (std::size_t q = 0; q < box.fields; ++q)
            c[q] = a[q] + t * (b[q] - a[q]);
          out[m++] = c;
        }
      }
      if (m == 0)
        return false;
      n = m;
      std::swap(poly, out);
    }
  }
  return true;
}

bool facetFeasible(const FacetValues& tri, const BinIndex& bin, const RangeQuantization& quant) {
  if (tri.fields != quant.fieldCount())
    throw Error("facet field count does not match quantization");
  return facetFeasible(tri, BinBox::of(bin, quant));
}

} // namespace fibertrack
