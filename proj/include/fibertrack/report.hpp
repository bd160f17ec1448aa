#pragma once

#include "fibertrack/extract.hpp"
#include "fibertrack/jacobi.hpp"
#include "fibertrack/pipeline.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace fibertrack {

/// Locale-independent rendering with 17 significant digits (round-trips binary64).
std::string formatReal(double v);

/// `pair,site_a,site_b,d1,d2,dinf,dqS,minkowski_r,intersection,kl,quadratic,rms`,
/// disabled metrics as empty cells, LF line endings.
void writeDistancesCsv(std::ostream& out, const DistanceSeries& series);
void writeDistancesCsv(const std::filesystem::path& path, const DistanceSeries& series);

/// One row per occupied bin: i1..ir, lo1..lor, count, measure, singular.
void writeHistogramCsv(std::ostream& out, const FiberComponentHistogram& hist);
void writeHistogramCsv(const std::filesystem::path& path, const FiberComponentHistogram& hist);

/// Rows `tet,<id>`, `triangle,<id>` and `bin,<linear id>,i1..ir`.
void writeJacobiCsv(std::ostream& out, const JacobiElementSet& jset, const SingularBinSet& bins,
                    const RangeQuantization& quant);
void writeJacobiCsv(const std::filesystem::path& path, const JacobiElementSet& jset,
                    const SingularBinSet& bins, const RangeQuantization& quant);

/// Self-contained 800x480 SVG line chart, one polyline per metric.
std::string renderSvgPlot(const DistanceSeries& series, const std::vector<Metric>& metrics);
void emitSvgPlot(const DistanceSeries& series, const std::vector<Metric>& metrics,
                 const std::filesystem::path& path);

} // namespace fibertrack
