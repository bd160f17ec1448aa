#include "fibertrack/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fibertrack {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

template <std::size_t N>
double maxEdge(const std::array<Vec3, N>& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      h = std::max(h, norm(sub(p[i], p[j])));
  return h;
}

} // namespace

bool SingularBinSet::contains(std::size_t id) const {
  return std::binary_search(bins.begin(), bins.end(), id);
}

Vec3 tetGradient(const std::array<Vec3, 4>& p, const std::array<double, 4>& f) {
  const Vec3 e1 = sub(p[1], p[0]), e2 = sub(p[2], p[0]), e3 = sub(p[3], p[0]);
  const double d1 = f[1] - f[0], d2 = f[2] - f[0], d3 = f[3] - f[0];
  // g . e_i = d_i, solved with the reciprocal basis
  const Vec3 c23 = cross(e2, e3), c31 = cross(e3, e1), c12 = cross(e1, e2);
  const double det = dot(e1, c23);
  if (det == 0.0)
    throw Error("degenerate tetrahedron in gradient computation");
  Vec3 g{};
  for (int a = 0; a < 3; ++a)
    g[a] = (d1 * c23[a] + d2 * c31[a] + d3 * c12[a]) / det;
  return g;
}

Vec3 triangleGradient(const std::array<Vec3, 3>& p, const std::array<double, 3>& f) {
  const Vec3 a = sub(p[1], p[0]), b = sub(p[2], p[0]);
  const double la = norm(a);
  const Vec3 n = cross(a, b);
  const double ln = norm(n);
  if (la == 0.0 || ln == 0.0)
    throw Error("degenerate triangle in gradient computation");
  const Vec3 u{a[0] / la, a[1] / la, a[2] / la};
  const Vec3 nw = cross(n, u);
  const Vec3 w{nw[0] / ln, nw[1] / ln, nw[2] / ln};
  // local coordinates: p1 -> (la, 0), p2 -> (bu, bw)
  const double bu = dot(b, u), bw = dot(b, w);
  const double d1 = f[1] - f[0], d2 = f[2] - f[0];
  const double gu = d1 / la;
  const double gw = (d2 - gu * bu) / bw;
  return {gu, gw, 0.0};
}

bool rankDeficient(const std::vector<Vec3>& gradients, int dim, double tau,
                   const std::vector<double>& vanish) {
  const std::size_t r = gradients.size();
  std::vector<double> len(r);
  for (std::size_t i = 0; i < r; ++i) {
    len[i] = norm(gradients[i]);
    if (len[i] <= vanish[i] || len[i] == 0.0)
      return true;
  }
  if (r == 1)
    return false;
  if (r == 2) {
    const Vec3 c = cross(gradients[0], gradients[1]);
    return norm(c) <= tau * len[0] * len[1];
  }
  Eigen::MatrixXd J(static_cast<Eigen::Index>(r), dim);
  for (std::size_t i = 0; i < r; ++i)
    for (int a = 0; a < dim; ++a)
      J(static_cast<Eigen::Index>(i), a) = gradients[i][a] / len[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& s = svd.singularValues();
  const Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(r), dim);
  return s(k - 1) <= tau * s(0);
}

JacobiElementSet markSingularElements(const MultifieldFrame& frame, double tau,
                                      const TetTopology* topology) {
  frame.validate();
  if (!(tau > 0.0))
    throw Error("jacobi tolerance tau must be > 0");
  const std::size_t r = frame.fieldCount();
  if (r > 3)
    throw Error("unsupported arity: jacobi test needs r <= 3, got " + std::to_string(r));
  TetTopology local;
  if (topology == nullptr || topology->dims != frame.grid.dims) {
    local = buildTopology(frame.grid);
    topology = &local;
  }

  // a gradient vanishes when it moves the field by at most tau of its total
  // spread across one element
  const auto box = fieldRangeBox(frame);
  std::vector<double> spread(r);
  for (std::size_t k = 0; k < r; ++k)
    spread[k] = box[k].second - box[k].first;

  JacobiElementSet out;
  out.tau = tau;
  std::vector<Vec3> grads(r);
  std::vector<double> vanish(r);

  for (std::size_t t = 0; t < topology->tetCount(); ++t) {
    const auto& ids = topology->tets[t];
    std::array<Vec3, 4> p;
    for (int v = 0; v < 4; ++v)
      p[v] = frame.grid.position(static_cast<std::size_t>(ids[v]));
    const double h = maxEdge(p);
    for (std::size_t k = 0; k < r; ++k) {
      const auto& vals = frame.fields[k].values;
      grads[k] = tetGradient(p, {vals[ids[0]], vals[ids[1]], vals[ids[2]], vals[ids[3]]});
      vanish[k] = tau * spread[k] / h;
    }
    if (rankDeficient(grads, 3, tau, vanish))
      out.tets.push_back(static_cast<std::uint32_t>(t));
  }

  for (std::uint32_t fid : topology->boundary_facets) {
    const auto& ids = topology->facets[fid].vertices;
    std::array<Vec3, 3> p;
    for (int v = 0; v < 3; ++v)
      p[v] = frame.grid.position(static_cast<std::size_t>(ids[v]));
    const double h = maxEdge(p);
    for (std::size_t k = 0; k < r; ++k) {
      const auto& vals = frame.fields[k].values;
      grads[k] = triangleGradient(p, {vals[ids[0]], vals[ids[1]], vals[ids[2]]});
      vanish[k] = tau * spread[k] / h;
    }
    if (rankDeficient(grads, 2, tau, vanish))
      out.triangles.push_back(fid);
  }
  return out;
}

SingularBinSet projectSingularBins(const JacobiElementSet& jset, const MultifieldFrame& frame,
                                   const RangeQuantization& quant, FiberComponentHistogram* hist,
                                   const TetTopology* topology) {
  const std::size_t r = frame.fieldCount();
  if (quant.fieldCount() != r)
    throw Error("quantization mismatch: " + std::to_string(quant.fieldCount()) +
                " fields vs frame with " + std::to_string(r));
  if (hist != nullptr && !(hist->quantization == quant))
    throw Error("quantization mismatch between histogram and projection");
  TetTopology local;
  if (topology == nullptr || topology->dims != frame.grid.dims) {
    local = buildTopology(frame.grid);
    topology = &local;
  }

  std::vector<std::size_t> ids;
  std::vector<std::pair<int, int>> range(r);
  std::vector<int> idx(r);
  auto project = [&](auto const& vertexIds) {
    for (std::size_t k = 0; k < r; ++k) {
      double lo = INFINITY, hi = -INFINITY;
      for (auto v : vertexIds) {
        lo = std::min(lo, frame.fields[k].values[v]);
        hi = std::max(hi, frame.fields[k].values[v]);
      }
      if (hi < quant.edges(k).front() || lo > quant.edges(k).back())
        return;
      range[k] = candidateBins(quant, k, lo, hi);
      idx[k] = range[k].first;
    }
    while (true) {
      ids.push_back(quant.linear(idx));
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
  };

  for (auto t : jset.tets) {
    if (t >= topology->tetCount())
      throw Error("singular tet id out of range");
    project(topology->tets[t]);
  }
  for (auto f : jset.triangles) {
    if (f >= topology->facets.size())
      throw Error("singular triangle id out of range");
    project(topology->facets[f].vertices);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  SingularBinSet out{std::move(ids)};
  if (hist != nullptr)
    for (auto& b : hist->bins)
      b.singular = out.contains(b.id);
  return out;
}

std::vector<std::uint8_t> singularTetMask(const JacobiElementSet& jset, std::size_t tet_count) {
  std::vector<std::uint8_t> mask(tet_count, 0);
  for (auto t : jset.tets) {
    if (t >= tet_count)
      throw Error("singular tet id out of range");
    mask[t] = 1;
  }
  return mask;
}

} // namespace fibertrack
