// Compiled with -mavx2; only reached after a CPUID check.

#include "fibertrack/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace fibertrack::simd {
namespace {

inline __m256d absPd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double hsumPairwise(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

inline __m256d loadMask(const std::uint8_t* mask) {
  std::int32_t bytes;
  std::memcpy(&bytes, mask, sizeof(bytes));
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(bytes));
  const __m256i isZero = _mm256_cmpeq_epi64(wide, _mm256_setzero_si256());
  return _mm256_castsi256_pd(_mm256_xor_si256(isZero, _mm256_set1_epi64x(-1)));
}

double sumAbsDiffAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, absPd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
  double s = hsumPairwise(acc);
  for (; i < n; ++i)
    s += std::fabs(a[i] - b[i]);
  return s;
}

double sumSqDiffAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsumPairwise(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double maxAbsDiffAvx2(const double* a, const double* b, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, absPd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i))));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i)
    r = std::max(r, std::fabs(a[i] - b[i]));
  return r;
}

template <bool Square>
SplitSum splitDiffAvx2(const double* a, const double* b, const std::uint8_t* mask,
                       std::size_t n) {
  __m256d in = _mm256_setzero_pd();
  __m256d out = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d t = Square ? _mm256_mul_pd(d, d) : absPd(d);
    const __m256d m = loadMask(mask + i);
    in = _mm256_add_pd(in, _mm256_and_pd(m, t));
    out = _mm256_add_pd(out, _mm256_andnot_pd(m, t));
  }
  SplitSum s{hsumPairwise(in), hsumPairwise(out)};
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    const double t = Square ? d * d : std::fabs(d);
    if (mask[i])
      s.masked += t;
    else
      s.unmasked += t;
  }
  return s;
}

double sumMinAvx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_min_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double s = hsumPairwise(acc);
  for (; i < n; ++i)
    s += std::min(a[i], b[i]);
  return s;
}

MinMax minMaxAvx2(const double* a, std::size_t n) {
  if (n == 0)
    return {0.0, 0.0};
  if (n < 4)
    return detail::kScalarTable.minMax(a, n);
  __m256d lo = _mm256_loadu_pd(a);
  __m256d hi = lo;
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(a + i);
    lo = _mm256_min_pd(lo, v);
    hi = _mm256_max_pd(hi, v);
  }
  alignas(32) double l[4], h[4];
  _mm256_store_pd(l, lo);
  _mm256_store_pd(h, hi);
  MinMax r{std::min(std::min(l[0], l[1]), std::min(l[2], l[3])),
           std::max(std::max(h[0], h[1]), std::max(h[2], h[3]))};
  for (; i < n; ++i) {
    r.lo = std::min(r.lo, a[i]);
    r.hi = std::max(r.hi, a[i]);
  }
  return r;
}

} // namespace

namespace detail {
const KernelTable kAvx2Table{
    sumAbsDiffAvx2,      sumSqDiffAvx2, maxAbsDiffAvx2, splitDiffAvx2<false>,
    splitDiffAvx2<true>, sumMinAvx2,    minMaxAvx2,
};
} // namespace detail

} // namespace fibertrack::simd
