#pragma once

#include "fibertrack/extract.hpp"
#include "fibertrack/jacobi.hpp"

#include <cstdint>
#include <string_view>
#include <utility>

namespace fibertrack {

enum class PmfMode {
  Count,   // N_x / N
  Measure, // A_x / A
};

PmfMode parsePmfMode(std::string_view text);
std::string_view pmfModeName(PmfMode mode);

/// Dense probability mass function over every bin of a quantization.
struct FiberDistribution {
  RangeQuantization quantization;
  std::vector<double> pmf;
  std::vector<std::uint8_t> singular; // same shape as pmf
  PmfMode mode = PmfMode::Count;

  std::size_t size() const { return pmf.size(); }
  SingularBinSet singularBins() const;
};

FiberDistribution toDistribution(const FiberComponentHistogram& hist, PmfMode mode = PmfMode::Count);

/// Re-indexes both distributions onto the union of their spectra, padding
/// with zeros. Partitions must share bin widths and agree where they overlap.
std::pair<FiberDistribution, FiberDistribution> alignDistributions(const FiberDistribution& a,
                                                                   const FiberDistribution& b);

} // namespace fibertrack
