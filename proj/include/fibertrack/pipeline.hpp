#pragma once

#include "fibertrack/distribution.hpp"
#include "fibertrack/jacobi.hpp"
#include "fibertrack/metrics.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fibertrack {

enum class Metric { D1, D2, Dinf, DqS, MinkowskiR, Intersection, KL, Quadratic, RMS };

inline constexpr std::array<Metric, 9> kAllMetrics{
    Metric::D1,           Metric::D2, Metric::Dinf,      Metric::DqS, Metric::MinkowskiR,
    Metric::Intersection, Metric::KL, Metric::Quadratic, Metric::RMS};

std::string_view metricName(Metric m);
Metric parseMetric(std::string_view name);
/// "all" or a comma-separated list of metric names.
std::vector<Metric> parseMetricList(std::string_view text);

struct PipelineConfig {
  QuantizationRequest quantization;
  DistanceConfig distance;
  double tau = kDefaultJacobiTau;
  PmfMode mode = PmfMode::Count;
  std::vector<Metric> metrics{kAllMetrics.begin(), kAllMetrics.end()};
  /// True when `metrics` came from "all": an oversized quadratic-form
  /// spectrum then leaves that column empty instead of failing.
  bool metrics_from_all = true;
  unsigned threads = 0; // 0 = hardware concurrency

  void validate() const;
};

/// Everything computed for one frame on a shared quantization.
struct FrameAnalysis {
  FiberComponentHistogram histogram;
  JacobiElementSet jacobi;
  SingularBinSet singular_bins;
  FiberDistribution distribution;
};

FrameAnalysis analyzeFrame(const MultifieldFrame& frame, const RangeQuantization& quant,
                           double tau, PmfMode mode, const TetTopology* topology = nullptr);

struct DistanceRow {
  std::size_t pair = 0;
  std::string site_a;
  std::string site_b;
  std::array<std::optional<double>, kAllMetrics.size()> values{};

  std::optional<double> get(Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

struct DistanceSeries {
  std::vector<Metric> metrics;
  std::vector<DistanceRow> rows;
  std::vector<std::string> warnings;

  std::size_t size() const { return rows.size(); }
  bool enabled(Metric m) const;
  /// Values of one metric in pair order; throws if the metric is absent.
  std::vector<double> column(Metric m) const;
};

/// quantize -> extract -> jacobi -> distribute -> distances, one row per
/// consecutive frame pair.
DistanceSeries computeDistanceSeries(const FrameSeries& series, const PipelineConfig& config);

/// Same, reusing precomputed per-frame analyses on a shared quantization.
DistanceSeries distancesFromAnalyses(const FrameSeries& series,
                                     const std::vector<FrameAnalysis>& frames,
                                     const PipelineConfig& config);

/// Runs analyzeFrame on every frame (in parallel when threads allow).
std::vector<FrameAnalysis> analyzeSeries(const FrameSeries& series, const RangeQuantization& quant,
                                         double tau, PmfMode mode, unsigned threads = 0);

/// Index of the first maximum.
std::size_t argmax(const std::vector<double>& values);
double median(std::vector<double> values);

} // namespace fibertrack
