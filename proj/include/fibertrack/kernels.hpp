#pragma once

// Data-parallel reductions used by the metrics and range scans. Every kernel
// has a portable scalar reference and an AVX2 variant; the variant is picked
// once at runtime from CPUID. Set FIBERTRACK_ISA=scalar to force the
// reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace fibertrack::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isaName(Isa isa);

struct SplitSum {
  double masked = 0.0;   // lanes with mask != 0
  double unmasked = 0.0; // lanes with mask == 0
};

struct MinMax {
  double lo;
  double hi;
};

struct KernelTable {
  double (*sumAbsDiff)(const double* a, const double* b, std::size_t n);
  double (*sumSqDiff)(const double* a, const double* b, std::size_t n);
  double (*maxAbsDiff)(const double* a, const double* b, std::size_t n);
  SplitSum (*splitAbsDiff)(const double* a, const double* b, const std::uint8_t* mask,
                           std::size_t n);
  SplitSum (*splitSqDiff)(const double* a, const double* b, const std::uint8_t* mask,
                          std::size_t n);
  double (*sumMin)(const double* a, const double* b, std::size_t n);
  MinMax (*minMax)(const double* a, std::size_t n);
};

bool isaSupported(Isa isa);

/// Best supported ISA, honouring the FIBERTRACK_ISA override.
Isa activeIsa();

/// Table for a specific ISA. Throws if the ISA is not supported on this CPU.
const KernelTable& kernels(Isa isa);
const KernelTable& kernels();

namespace detail {
extern const KernelTable kScalarTable;
#if defined(FIBERTRACK_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
} // namespace detail

// Convenience wrappers over the active table.
double sumAbsDiff(std::span<const double> a, std::span<const double> b);
double sumSqDiff(std::span<const double> a, std::span<const double> b);
double maxAbsDiff(std::span<const double> a, std::span<const double> b);
SplitSum splitAbsDiff(std::span<const double> a, std::span<const double> b,
                      std::span<const std::uint8_t> mask);
SplitSum splitSqDiff(std::span<const double> a, std::span<const double> b,
                     std::span<const std::uint8_t> mask);
double sumMin(std::span<const double> a, std::span<const double> b);
MinMax minMax(std::span<const double> a);

} // namespace fibertrack::simd
