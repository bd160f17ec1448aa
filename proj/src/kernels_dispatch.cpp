#include "fibertrack/kernels.hpp"
#include "fibertrack/grid.hpp"

#include <cstdlib>
#include <string>

namespace fibertrack::simd {

std::string_view isaName(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return "scalar";
  case Isa::Avx2:
    return "avx2";
  }
  return "unknown";
}

bool isaSupported(Isa isa) {
  switch (isa) {
  case Isa::Scalar:
    return true;
  case Isa::Avx2:
#if defined(FIBERTRACK_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  }
  return false;
}

namespace {
Isa detectIsa() {
  if (const char* env = std::getenv("FIBERTRACK_ISA")) {
    const std::string want(env);
    if (want == "scalar")
      return Isa::Scalar;
    if (want == "avx2" && isaSupported(Isa::Avx2))
      return Isa::Avx2;
  }
  return isaSupported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}
} // namespace

Isa activeIsa() {
  static const Isa isa = detectIsa();
  return isa;
}

const KernelTable& kernels(Isa isa) {
  if (!isaSupported(isa))
    throw Error("instruction set not supported on this CPU: " + std::string(isaName(isa)));
#if defined(FIBERTRACK_HAVE_AVX2)
  if (isa == Isa::Avx2)
    return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

const KernelTable& kernels() {
  static const KernelTable& table = kernels(activeIsa());
  return table;
}

namespace {
void requireSameLength(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error("kernel operands differ in length");
}
} // namespace

double sumAbsDiff(std::span<const double> a, std::span<const double> b) {
  requireSameLength(a.size(), b.size());
  return kernels().sumAbsDiff(a.data(), b.data(), a.size());
}

double sumSqDiff(std::span<const double> a, std::span<const double> b) {
  requireSameLength(a.size(), b.size());
  return kernels().sumSqDiff(a.data(), b.data(), a.size());
}

double maxAbsDiff(std::span<const double> a, std::span<const double> b) {
  requireSameLength(a.size(), b.size());
  return kernels().maxAbsDiff(a.data(), b.data(), a.size());
}

SplitSum splitAbsDiff(std::span<const double> a, std::span<const double> b,
                      std::span<const std::uint8_t> mask) {
  requireSameLength(a.size(), b.size());
  requireSameLength(a.size(), mask.size());
  return kernels().splitAbsDiff(a.data(), b.data(), mask.data(), a.size());
}

SplitSum splitSqDiff(std::span<const double> a, std::span<const double> b,
                     std::span<const std::uint8_t> mask) {
  requireSameLength(a.size(), b.size());
  requireSameLength(a.size(), mask.size());
  return kernels().splitSqDiff(a.data(), b.data(), mask.data(), a.size());
}

double sumMin(std::span<const double> a, std::span<const double> b) {
  requireSameLength(a.size(), b.size());
  return kernels().sumMin(a.data(), b.data(), a.size());
}

MinMax minMax(std::span<const double> a) {
  return kernels().minMax(a.data(), a.size());
}

} // namespace fibertrack::simd
