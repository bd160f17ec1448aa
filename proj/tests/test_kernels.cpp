#include "fibertrack/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace fibertrack;

namespace {

struct Operands {
  std::vector<double> a, b;
  std::vector<std::uint8_t> mask;
};

Operands randomOperands(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::bernoulli_distribution coin(0.3);
  Operands o;
  for (std::size_t i = 0; i < n; ++i) {
    o.a.push_back(u(rng));
    o.b.push_back(u(rng));
    o.mask.push_back(coin(rng) ? 1 : 0);
  }
  return o;
}

} // namespace

TEST_CASE("scalar kernels on hand values") {
  const auto& k = simd::kernels(simd::Isa::Scalar);
  const std::vector<double> a{0.5, 0.25, 0.25, 0.0, 1.0};
  const std::vector<double> b{0.25, 0.25, 0.25, 0.25, -1.0};
  const std::vector<std::uint8_t> m{1, 0, 0, 0, 1};
  CHECK(k.sumAbsDiff(a.data(), b.data(), 5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(k.sumSqDiff(a.data(), b.data(), 5) == doctest::Approx(4.125).epsilon(1e-15));
  CHECK(k.maxAbsDiff(a.data(), b.data(), 5) == 2.0);
  const auto s = k.splitAbsDiff(a.data(), b.data(), m.data(), 5);
  CHECK(s.masked == 2.25);
  CHECK(s.unmasked == 0.25);
  CHECK(k.sumMin(a.data(), b.data(), 5) == doctest::Approx(-0.25).epsilon(1e-15));
  const auto mm = k.minMax(a.data(), 5);
  CHECK(mm.lo == 0.0);
  CHECK(mm.hi == 1.0);
}

TEST_CASE("empty inputs reduce to neutral values") {
  const auto& k = simd::kernels(simd::Isa::Scalar);
  CHECK(k.sumAbsDiff(nullptr, nullptr, 0) == 0.0);
  CHECK(k.maxAbsDiff(nullptr, nullptr, 0) == 0.0);
  const auto s = k.splitSqDiff(nullptr, nullptr, nullptr, 0);
  CHECK(s.masked == 0.0);
  CHECK(s.unmasked == 0.0);
}

TEST_CASE("span wrappers reject mismatched lengths") {
  std::vector<double> a(3), b(4);
  CHECK_THROWS(simd::sumAbsDiff(a, b));
}

TEST_CASE("AVX2 kernels match the scalar reference bit for bit") {
  if (!simd::isaSupported(simd::Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  const auto& s = simd::kernels(simd::Isa::Scalar);
  const auto& v = simd::kernels(simd::Isa::Avx2);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 64u, 1000u, 4099u}) {
    CAPTURE(n);
    const auto o = randomOperands(n, 1234 + n);
    const double* a = o.a.data();
    const double* b = o.b.data();
    CHECK(s.sumAbsDiff(a, b, n) == v.sumAbsDiff(a, b, n));
    CHECK(s.sumSqDiff(a, b, n) == v.sumSqDiff(a, b, n));
    CHECK(s.maxAbsDiff(a, b, n) == v.maxAbsDiff(a, b, n));
    CHECK(s.sumMin(a, b, n) == v.sumMin(a, b, n));
    const auto sa = s.splitAbsDiff(a, b, o.mask.data(), n);
    const auto va = v.splitAbsDiff(a, b, o.mask.data(), n);
    CHECK(sa.masked == va.masked);
    CHECK(sa.unmasked == va.unmasked);
    const auto sq = s.splitSqDiff(a, b, o.mask.data(), n);
    const auto vq = v.splitSqDiff(a, b, o.mask.data(), n);
    CHECK(sq.masked == vq.masked);
    CHECK(sq.unmasked == vq.unmasked);
    if (n > 0) {
      const auto sm = s.minMax(a, n);
      const auto vm = v.minMax(a, n);
      CHECK(sm.lo == vm.lo);
      CHECK(sm.hi == vm.hi);
    }
  }
}

TEST_CASE("active ISA is one the CPU supports") {
  CHECK(simd::isaSupported(simd::activeIsa()));
  CHECK(simd::isaSupported(simd::Isa::Scalar));
  CHECK(simd::isaName(simd::Isa::Scalar) == "scalar");
}
