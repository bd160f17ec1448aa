#include "fibertrack/quantization.hpp"

#include <doctest.h>

using namespace fibertrack;

namespace {

MultifieldFrame frameWith(std::vector<std::vector<double>> fields) {
  MultifieldFrame f;
  f.grid.dims = {2, 2, 2};
  int k = 0;
  for (auto& v : fields)
    f.fields.push_back({"f" + std::to_string(k++), std::move(v)});
  return f;
}

} // namespace

TEST_CASE("half-open bins with a closed last bin") {
  const RangeQuantization q({{0.0, 1.0, 2.0, 3.0}});
  CHECK(q.binOf(0, 0.0) == 0);
  CHECK(q.binOf(0, 0.999) == 0);
  CHECK(q.binOf(0, 1.0) == 1);
  CHECK(q.binOf(0, 2.5) == 2);
  CHECK(q.binOf(0, 3.0) == 2);
  CHECK(q.binOf(0, 3.0001) == -1);
  CHECK(q.binOf(0, -0.1) == -1);
}

TEST_CASE("edges must be strictly increasing") {
  CHECK_THROWS_AS(RangeQuantization({{0.0, 1.0, 1.0}}), Error);
  CHECK_THROWS_AS(RangeQuantization(std::vector<std::vector<double>>{{0.0}}), Error);
  CHECK_THROWS_AS(RangeQuantization(std::vector<std::vector<double>>{}), Error);
}

TEST_CASE("linear ids are field-0 fastest and invertible") {
  const RangeQuantization q({{0, 1, 2, 3}, {0, 1, 2}});
  CHECK(q.totalBins() == 6);
  CHECK(q.linear({1, 0}) == 1);
  CHECK(q.linear({0, 1}) == 3);
  for (std::size_t id = 0; id < 6; ++id)
    CHECK(q.linear(q.unravel(id)) == id);
  CHECK(q.valid({2, 1}));
  CHECK_FALSE(q.valid({3, 0}));
}

TEST_CASE("slab widths cover the union range anchored at the minimum") {
  const auto a = frameWith({{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 1.9}});
  const auto b = frameWith({{0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 2.1}});
  QuantizationRequest req;
  req.slab_widths = {0.5};
  const auto q = buildQuantization(std::vector<MultifieldFrame>{a, b}, req);
  CHECK(q.binCount(0) == 5);
  CHECK(q.lower(0, 0) == 0.0);
  CHECK(q.upper(0, 4) == doctest::Approx(2.5));
  CHECK(q.covers({{0.0, 2.1}}));
}

TEST_CASE("an exact multiple of the width does not add an empty bin") {
  const auto a = frameWith({{0, 0, 0, 0, 0, 0, 0, 2.0}});
  QuantizationRequest req;
  req.slab_widths = {0.5};
  const auto q = buildQuantization(std::vector<MultifieldFrame>{a}, req);
  CHECK(q.binCount(0) == 4);
  CHECK(q.binOf(0, 2.0) == 3);
}

TEST_CASE("bin counts split the range evenly") {
  const auto a = frameWith({{-1, 0, 0, 0, 0, 0, 0, 3}});
  QuantizationRequest req;
  req.bin_counts = {4};
  const auto q = buildQuantization(std::vector<MultifieldFrame>{a}, req);
  CHECK(q.binCount(0) == 4);
  CHECK(q.lower(0, 1) == doctest::Approx(0.0));
  CHECK(q.upper(0, 3) == 3.0);
}

TEST_CASE("a constant field gets one bin and a warning") {
  const auto a = frameWith({std::vector<double>(8, 2.0)});
  QuantizationRequest req;
  req.slab_widths = {0.5};
  const auto q = buildQuantization(std::vector<MultifieldFrame>{a}, req);
  CHECK(q.binCount(0) == 1);
  CHECK(q.binOf(0, 2.0) == 0);
  CHECK_FALSE(q.warnings.empty());

  QuantizationRequest counts;
  counts.bin_counts = {3};
  const auto qc = buildQuantization(std::vector<MultifieldFrame>{a}, counts);
  CHECK(qc.binOf(0, 2.0) >= 0);
  CHECK_FALSE(qc.warnings.empty());
}

TEST_CASE("request validation") {
  const auto a = frameWith({{0, 1, 2, 3, 4, 5, 6, 7}});
  QuantizationRequest both;
  both.slab_widths = {1.0};
  both.bin_counts = {2};
  CHECK_THROWS_AS(buildQuantization(std::vector<MultifieldFrame>{a}, both), Error);
  QuantizationRequest wrong;
  wrong.slab_widths = {1.0, 1.0};
  CHECK_THROWS_AS(buildQuantization(std::vector<MultifieldFrame>{a}, wrong), Error);
  QuantizationRequest neg;
  neg.slab_widths = {-1.0};
  CHECK_THROWS_AS(buildQuantization(std::vector<MultifieldFrame>{a}, neg), Error);
}
