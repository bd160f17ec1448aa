#include "fibertrack/datagen.hpp"

#include <cmath>
#include <numeric>

namespace fibertrack {

void SyntheticSpec::validate() const {
  if (n_sites < 2)
    throw Error("n_sites must be >= 2");
  for (int d : dims)
    if (d < 2)
      throw Error("dims must be >= 2");
  if (kind == SyntheticKind::TranslatedParaboloid) {
    if (!(step > 0.0))
      throw Error("step must be > 0");
    if (!(box_hi > box_lo))
      throw Error("box_hi must exceed box_lo");
  } else {
    if (!(sigma > 0.0))
      throw Error("sigma must be > 0");
    if (!(blob_box_hi > blob_box_lo))
      throw Error("blob box is empty");
  }
}

namespace {

GridDomain cubeGrid(const std::array<int, 3>& dims, double lo, double hi) {
  GridDomain g;
  g.dims = dims;
  for (int a = 0; a < 3; ++a) {
    g.origin[a] = lo;
    g.spacing[a] = (hi - lo) / (dims[a] - 1);
  }
  return g;
}

template <typename Fn>
std::vector<double> sample(const GridDomain& g, Fn&& fn) {
  std::vector<double> v(g.vertexCount());
  for (int k = 0; k < g.dims[2]; ++k)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int i = 0; i < g.dims[0]; ++i)
        v[g.index(i, j, k)] = fn(g.position(i, j, k));
  return v;
}

Vec3 lerp(const Vec3& a, const Vec3& b, double t) {
  return {a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t};
}

double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

} // namespace

FrameSeries genTranslatedParaboloid(const SyntheticSpec& spec) {
  if (spec.kind != SyntheticKind::TranslatedParaboloid)
    throw Error("generator kind is not translated-paraboloid");
  spec.validate();
  FrameSeries series;
  for (int site = 0; site < spec.n_sites; ++site) {
    const double shift = site * spec.step;
    MultifieldFrame frame;
    frame.grid = cubeGrid(spec.dims, spec.box_lo + shift, spec.box_hi + shift);
    frame.time_index = site;
    frame.fields.push_back({"height", sample(frame.grid, [](const Vec3& p) { return p[2]; })});
    frame.fields.push_back({"paraboloid", sample(frame.grid, [](const Vec3& p) {
                              return p[0] * p[0] + p[1] * p[1] - p[2];
                            })});
    series.frames.push_back(std::move(frame));
    series.site_labels.push_back(std::to_string(site));
  }
  series.validate();
  return series;
}

int countSuperlevelComponents(const GridDomain& grid, const std::vector<double>& field,
                              double iso) {
  static constexpr std::array<std::array<int, 3>, 7> kOffsets{
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}};
  const std::size_t n = grid.vertexCount();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const std::size_t a = grid.index(i, j, k);
        if (field[a] < iso)
          continue;
        for (const auto& o : kOffsets) {
          const int ii = i + o[0], jj = j + o[1], kk = k + o[2];
          if (ii >= grid.dims[0] || jj >= grid.dims[1] || kk >= grid.dims[2])
            continue;
          const std::size_t b = grid.index(ii, jj, kk);
          if (field[b] >= iso)
            parent[find(a)] = find(b);
        }
      }
  int count = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (field[v] >= iso && find(v) == v)
      ++count;
  return count;
}

GeneratedSeries genSeparatingBlobs(const SyntheticSpec& spec) {
  if (spec.kind != SyntheticKind::SeparatingBlobs)
    throw Error("generator kind is not separating-blobs");
  spec.validate();
  GeneratedSeries out;
  const double inv = 1.0 / (spec.sigma * spec.sigma);
  bool moves = false;
  for (int site = 0; site < spec.n_sites; ++site) {
    const double t = static_cast<double>(site) / (spec.n_sites - 1);
    const Vec3 c1 = lerp(spec.center1_start, spec.center1_end, t);
    const Vec3 c2 = lerp(spec.center2_start, spec.center2_end, t);
    if (c1 != c2)
      moves = true;
    MultifieldFrame frame;
    frame.grid = cubeGrid(spec.dims, spec.blob_box_lo, spec.blob_box_hi);
    frame.time_index = site;
    frame.fields.push_back({"blobs", sample(frame.grid, [&](const Vec3& p) {
                              return std::exp(-dist2(p, c1) * inv) + std::exp(-dist2(p, c2) * inv);
                            })});
    frame.fields.push_back({"height", sample(frame.grid, [](const Vec3& p) { return p[2]; })});
    if (!out.split_site &&
        countSuperlevelComponents(frame.grid, frame.fields[0].values, spec.split_isovalue) == 2)
      out.split_site = site;
    out.series.frames.push_back(std::move(frame));
    out.series.site_labels.push_back(std::to_string(site));
  }
  if (!moves)
    throw Error("blob centers coincide at every site; the series has no split event");
  if (!out.split_site)
    throw Error("superlevel set never splits into two components; no ground-truth event");
  out.series.validate();
  return out;
}

GeneratedSeries generate(const SyntheticSpec& spec) {
  if (spec.kind == SyntheticKind::TranslatedParaboloid)
    return {genTranslatedParaboloid(spec), std::nullopt};
  return genSeparatingBlobs(spec);
}

} // namespace fibertrack
