#include "fibertrack/extract.hpp"
#include "fibertrack/datagen.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fibertrack;

namespace {

RangeQuantization uniform(std::vector<std::pair<double, double>> ranges, int bins) {
  std::vector<std::vector<double>> edges;
  for (auto [lo, hi] : ranges) {
    std::vector<double> e;
    for (int i = 0; i <= bins; ++i)
      e.push_back(i == bins ? hi : lo + (hi - lo) * i / bins);
    edges.push_back(e);
  }
  return RangeQuantization(edges);
}

MultifieldFrame twoBlobs(std::array<int, 3> dims, double half_sep, double sigma = 1.0) {
  return oracle::makeFrame(dims, {-5, -5, -5}, {5, 5, 5}, {"blobs", "height"},
                           [&](const Vec3& p) {
                             const double a = (p[0] + half_sep) * (p[0] + half_sep) +
                                              p[1] * p[1] + p[2] * p[2];
                             const double b = (p[0] - half_sep) * (p[0] - half_sep) +
                                              p[1] * p[1] + p[2] * p[2];
                             const double s2 = sigma * sigma;
                             return std::vector<double>{std::exp(-a / s2) + std::exp(-b / s2),
                                                        p[2]};
                           });
}

} // namespace

TEST_CASE("a constant field is one component carrying the whole volume") {
  const auto frame = oracle::makeFrame({5, 4, 3}, {0, 0, 0}, {2, 3, 1}, {"c"},
                                       [](const Vec3&) { return std::vector<double>{0.7}; });
  const RangeQuantization q({{0.0, 0.5, 1.0}});
  const auto h = extractFiberComponents(frame, q);
  REQUIRE(h.bins.size() == 1);
  CHECK(h.bins[0].index == BinIndex{1});
  CHECK(h.bins[0].count == 1);
  CHECK(h.bins[0].measure == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(h.total_count == 1);
}

TEST_CASE("a linear field gives one slab per bin with exact volume") {
  const auto frame = oracle::makeFrame({4, 4, 4}, {0, 0, 0}, {3, 3, 3}, {"x"},
                                       [](const Vec3& p) { return std::vector<double>{p[0]}; });
  for (int bins : {3, 6, 7}) {
    CAPTURE(bins);
    const auto q = uniform({{0.0, 3.0}}, bins);
    const auto h = extractFiberComponents(frame, q);
    REQUIRE(h.bins.size() == static_cast<std::size_t>(bins));
    for (const auto& b : h.bins) {
      CHECK(b.count == 1);
      CHECK(b.measure == doctest::Approx(9.0 * 3.0 / bins).epsilon(1e-12));
    }
    CHECK(h.total_measure == doctest::Approx(27.0).epsilon(1e-12));
  }
}

TEST_CASE("separated blobs form two components in the upper bins") {
  const auto frame = twoBlobs({12, 12, 12}, 2.5);
  const auto q = buildQuantization(std::vector<MultifieldFrame>{frame},
                                   QuantizationRequest{{}, {4, 1}});
  const auto h = extractFiberComponents(frame, q);
  const auto* top = h.find(q.linear({3, 0}));
  REQUIRE(top != nullptr);
  CHECK(top->count == 2);
  const auto* bottom = h.find(q.linear({0, 0}));
  REQUIRE(bottom != nullptr);
  CHECK(bottom->count == 1);
}

TEST_CASE("measures partition the domain") {
  const auto series = genTranslatedParaboloid([] {
    SyntheticSpec s;
    s.dims = {9, 9, 9};
    s.n_sites = 2;
    return s;
  }());
  const auto& frame = series.frames[1];
  for (auto req : {QuantizationRequest{{0.5, 0.5}, {}}, QuantizationRequest{{}, {5, 3}}}) {
    const auto q = buildQuantization(std::vector<MultifieldFrame>{frame}, req);
    const auto h = extractFiberComponents(frame, q);
    CHECK(h.total_measure == doctest::Approx(frame.grid.volume()).epsilon(1e-9));
    double sum = 0.0;
    std::int64_t n = 0;
    for (const auto& b : h.bins) {
      sum += b.measure;
      n += b.count;
      CHECK(b.count >= 1);
    }
    CHECK(sum == doctest::Approx(frame.grid.volume()).epsilon(1e-9));
    CHECK(n == h.total_count);
  }
}

TEST_CASE("component counts agree with the refined flood fill on a small fixture") {
  const auto frame = twoBlobs({10, 10, 10}, 3.2, 1.6);
  const auto q = buildQuantization(std::vector<MultifieldFrame>{frame},
                                   QuantizationRequest{{}, {4, 3}});
  const auto h = extractFiberComponents(frame, q);
  const auto ref = oracle::refinedBinComponents(frame, q, 4);
  const auto thick = oracle::binThickness(frame, q);
  const double spacing = frame.grid.spacing[0] / 4;
  std::size_t compared = 0;
  for (const auto& b : h.bins) {
    const long id = static_cast<long>(b.id);
    if (thick.at(id) <= spacing)
      continue;
    ++compared;
    CAPTURE(b.index[0]);
    CAPTURE(b.index[1]);
    CHECK(ref.count(id) == 1);
    CHECK(ref.at(id) == b.count);
  }
  CHECK(compared >= h.bins.size() / 2);
}

TEST_CASE("marked tets are reported per bin") {
  const auto frame = oracle::makeFrame({3, 3, 3}, {0, 0, 0}, {2, 2, 2}, {"x"},
                                       [](const Vec3& p) { return std::vector<double>{p[0]}; });
  const RangeQuantization q({{0.0, 1.0, 2.0}});
  const auto topo = buildTopology(frame.grid);
  std::vector<std::uint8_t> mask(topo.tetCount(), 0);
  mask[0] = 1; // a tet in cell (0,0,0), i.e. x in [0,1]
  ExtractOptions opts;
  opts.marked_tets = mask;
  opts.topology = &topo;
  const auto h = extractFiberComponents(frame, q, opts);
  REQUIRE(h.bins.size() == 2);
  CHECK(h.bins[0].singular_components == 1);
  CHECK(h.bins[1].singular_components == 0);
}

TEST_CASE("a quantization that misses the field range is rejected") {
  const auto frame = oracle::makeFrame({3, 3, 3}, {0, 0, 0}, {2, 2, 2}, {"x"},
                                       [](const Vec3& p) { return std::vector<double>{p[0]}; });
  CHECK_THROWS_AS(extractFiberComponents(frame, RangeQuantization({{0.0, 1.0}})), Error);
  CHECK_THROWS_AS(extractFiberComponents(frame, RangeQuantization({{0.0, 2.0}, {0.0, 1.0}})),
                  Error);
}

TEST_CASE("candidate bins cover a closed interval") {
  const RangeQuantization q({{0.0, 1.0, 2.0, 3.0}});
  CHECK(candidateBins(q, 0, 0.2, 0.4) == std::pair<int, int>{0, 0});
  CHECK(candidateBins(q, 0, 0.5, 1.0) == std::pair<int, int>{0, 1});
  CHECK(candidateBins(q, 0, 2.5, 3.0) == std::pair<int, int>{2, 2});
}
