#include "fibertrack/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace fibertrack::simd {
namespace {

// Four interleaved accumulators, mirroring the AVX2 lane layout so the two
// paths round the same way on most inputs.

double sumAbsDiffScalar(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l)
      acc[l] += std::fabs(a[i + l] - b[i + l]);
  double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < n; ++i)
    s += std::fabs(a[i] - b[i]);
  return s;
}

double sumSqDiffScalar(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) {
      const double d = a[i + l] - b[i + l];
      acc[l] += d * d;
    }
  double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double maxAbsDiffScalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

template <bool Square>
SplitSum splitDiffScalar(const double* a, const double* b, const std::uint8_t* mask,
                         std::size_t n) {
  double in[4] = {0.0, 0.0, 0.0, 0.0};
  double out[4] = {0.0, 0.0, 0.0, 0.0};
  auto term = [&](std::size_t i) {
    const double d = a[i] - b[i];
    return Square ? d * d : std::fabs(d);
  };
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) {
      const double t = term(i + l);
      if (mask[i + l])
        in[l] += t;
      else
        out[l] += t;
    }
  SplitSum s{(in[0] + in[1]) + (in[2] + in[3]), (out[0] + out[1]) + (out[2] + out[3])};
  for (; i < n; ++i) {
    if (mask[i])
      s.masked += term(i);
    else
      s.unmasked += term(i);
  }
  return s;
}

double sumMinScalar(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l)
      acc[l] += std::min(a[i + l], b[i + l]);
  double s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < n; ++i)
    s += std::min(a[i], b[i]);
  return s;
}

MinMax minMaxScalar(const double* a, std::size_t n) {
  if (n == 0)
    return {0.0, 0.0};
  MinMax r{a[0], a[0]};
  for (std::size_t i = 1; i < n; ++i) {
    r.lo = std::min(r.lo, a[i]);
    r.hi = std::max(r.hi, a[i]);
  }
  return r;
}

} // namespace

namespace detail {
const KernelTable kScalarTable{
    sumAbsDiffScalar,       sumSqDiffScalar, maxAbsDiffScalar, splitDiffScalar<false>,
    splitDiffScalar<true>,  sumMinScalar,    minMaxScalar,
};
} // namespace detail

} // namespace fibertrack::simd
