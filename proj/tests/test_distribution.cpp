#include "fibertrack/distribution.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace fibertrack;

namespace {

FiberComponentHistogram histogram(const RangeQuantization& q,
                                  std::vector<std::tuple<BinIndex, int, double, bool>> bins) {
  FiberComponentHistogram h;
  h.quantization = q;
  for (auto& [idx, count, measure, singular] : bins) {
    FiberComponentHistogram::Bin b;
    b.index = idx;
    b.id = q.linear(idx);
    b.count = count;
    b.measure = measure;
    b.singular = singular;
    h.bins.push_back(b);
    h.total_count += count;
    h.total_measure += measure;
  }
  return h;
}

} // namespace

TEST_CASE("count and measure pmfs") {
  const RangeQuantization q({{0, 1, 2, 3}, {0, 1}});
  const auto h = histogram(q, {{{0, 0}, 1, 3.0, false}, {{2, 0}, 3, 1.0, true}});
  const auto dc = toDistribution(h, PmfMode::Count);
  CHECK(dc.pmf == std::vector<double>{0.25, 0.0, 0.75});
  CHECK(dc.singular == std::vector<std::uint8_t>{0, 0, 1});
  const auto dm = toDistribution(h, PmfMode::Measure);
  CHECK(dm.pmf == std::vector<double>{0.75, 0.0, 0.25});
  CHECK(dm.singularBins().bins == std::vector<std::size_t>{2});
}

TEST_CASE("an empty histogram has no distribution") {
  const RangeQuantization q({{0, 1}});
  CHECK_THROWS_AS(toDistribution(histogram(q, {})), Error);
}

TEST_CASE("pmfs of extracted histograms sum to one") {
  const auto frame = oracle::makeFrame({7, 6, 5}, {0, 0, 0}, {1, 1, 1}, {"a", "b"},
                                       [](const Vec3& p) {
                                         return std::vector<double>{
                                             std::sin(3 * p[0]) + p[1] * p[2], p[0] * p[0] - p[2]};
                                       });
  const auto q = buildQuantization(std::vector<MultifieldFrame>{frame},
                                   QuantizationRequest{{}, {6, 5}});
  const auto h = extractFiberComponents(frame, q);
  for (auto mode : {PmfMode::Count, PmfMode::Measure}) {
    const auto d = toDistribution(h, mode);
    const double s = std::accumulate(d.pmf.begin(), d.pmf.end(), 0.0);
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("alignment is the identity for equal quantizations") {
  const auto a = support::dist({0.5, 0.5});
  const auto b = support::dist({0.25, 0.75});
  const auto [x, y] = alignDistributions(a, b);
  CHECK(x.pmf == a.pmf);
  CHECK(y.pmf == b.pmf);
}

TEST_CASE("alignment pads shifted spectra with zeros") {
  const auto a = support::dist({0.5, 0.5}, {1, 0}, 0.0);       // bins [0,1),[1,2]
  const auto b = support::dist({0.25, 0.25, 0.5}, {}, 1.0);     // bins [1,2),[2,3),[3,4]
  const auto [x, y] = alignDistributions(a, b);
  REQUIRE(x.size() == 4);
  CHECK(x.pmf == std::vector<double>{0.5, 0.5, 0.0, 0.0});
  CHECK(y.pmf == std::vector<double>{0.0, 0.25, 0.25, 0.5});
  CHECK(x.singular == std::vector<std::uint8_t>{1, 0, 0, 0});
  CHECK(x.quantization == y.quantization);
}

TEST_CASE("alignment rejects incompatible partitions") {
  const auto a = support::dist({0.5, 0.5}, {}, 0.0);
  const auto frac = support::dist({0.5, 0.5}, {}, 0.5);
  CHECK_THROWS_AS(alignDistributions(a, frac), Error);
  FiberDistribution wide = a;
  wide.quantization = RangeQuantization({{0.0, 2.0, 4.0}});
  CHECK_THROWS_AS(alignDistributions(a, wide), Error);
  FiberDistribution twoField;
  twoField.quantization = RangeQuantization({{0.0, 1.0}, {0.0, 1.0}});
  twoField.pmf = {1.0};
  twoField.singular = {0};
  CHECK_THROWS_AS(alignDistributions(a, twoField), Error);
}

TEST_CASE("pmf mode names") {
  CHECK(parsePmfMode("count") == PmfMode::Count);
  CHECK(parsePmfMode("measure") == PmfMode::Measure);
  CHECK_THROWS_AS(parsePmfMode("volume"), Error);
}
