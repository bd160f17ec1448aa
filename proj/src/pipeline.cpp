#include "fibertrack/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace fibertrack {

std::string_view metricName(Metric m) {
  switch (m) {
  case Metric::D1:
    return "d1";
  case Metric::D2:
    return "d2";
  case Metric::Dinf:
    return "dinf";
  case Metric::DqS:
    return "dqS";
  case Metric::MinkowskiR:
    return "minkowski_r";
  case Metric::Intersection:
    return "intersection";
  case Metric::KL:
    return "kl";
  case Metric::Quadratic:
    return "quadratic";
  case Metric::RMS:
    return "rms";
  }
  return "?";
}

Metric parseMetric(std::string_view name) {
  for (Metric m : kAllMetrics)
    if (metricName(m) == name)
      return m;
  throw Error("unknown metric '" + std::string(name) + "'");
}

std::vector<Metric> parseMetricList(std::string_view text) {
  if (text == "all")
    return {kAllMetrics.begin(), kAllMetrics.end()};
  std::vector<Metric> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (!item.empty()) {
      const Metric m = parseMetric(item);
      if (std::find(out.begin(), out.end(), m) == out.end())
        out.push_back(m);
    }
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  if (out.empty())
    throw Error("metric list is empty");
  return out;
}

void PipelineConfig::validate() const {
  distance.validate();
  if (!(tau > 0.0))
    throw Error("tau must be > 0");
  if (metrics.empty())
    throw Error("no metrics enabled");
}

bool DistanceSeries::enabled(Metric m) const {
  return std::find(metrics.begin(), metrics.end(), m) != metrics.end();
}

std::vector<double> DistanceSeries::column(Metric m) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const auto v = row.get(m);
    if (!v)
      throw Error("metric '" + std::string(metricName(m)) + "' was not computed");
    out.push_back(*v);
  }
  return out;
}

FrameAnalysis analyzeFrame(const MultifieldFrame& frame, const RangeQuantization& quant,
                           double tau, PmfMode mode, const TetTopology* topology) {
  TetTopology local;
  if (topology == nullptr || topology->dims != frame.grid.dims) {
    local = buildTopology(frame.grid);
    topology = &local;
  }
  FrameAnalysis a;
  a.jacobi = markSingularElements(frame, tau, topology);
  const auto mask = singularTetMask(a.jacobi, topology->tetCount());
  ExtractOptions opts;
  opts.marked_tets = mask;
  opts.topology = topology;
  a.histogram = extractFiberComponents(frame, quant, opts);
  a.singular_bins = projectSingularBins(a.jacobi, frame, quant, &a.histogram, topology);
  a.distribution = toDistribution(a.histogram, mode);
  // singular bins outside the occupied support still count for the weighting
  for (auto id : a.singular_bins.bins)
    a.distribution.singular[id] = 1;
  return a;
}

std::vector<FrameAnalysis> analyzeSeries(const FrameSeries& series, const RangeQuantization& quant,
                                         double tau, PmfMode mode, unsigned threads) {
  series.validate();
  const TetTopology topo = buildTopology(series.frames.front().grid);
  std::vector<FrameAnalysis> out(series.frames.size());
  unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n = std::min<unsigned>(n, static_cast<unsigned>(series.frames.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < series.frames.size(); i = next++) {
      try {
        out[i] = analyzeFrame(series.frames[i], quant, tau, mode, &topo);
      } catch (...) {
        std::lock_guard lock(failureMutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);
  return out;
}

DistanceSeries distancesFromAnalyses(const FrameSeries& series,
                                     const std::vector<FrameAnalysis>& frames,
                                     const PipelineConfig& config) {
  config.validate();
  if (frames.size() != series.frames.size())
    throw Error("analysis count does not match frame count");
  DistanceSeries out;
  out.metrics = config.metrics;
  const auto& dc = config.distance;

  std::optional<SimilarityMatrix> A;
  if (out.enabled(Metric::Quadratic)) {
    try {
      A = SimilarityMatrix::gaussian(frames.front().distribution.quantization, dc.sigma_a);
    } catch (const Error& e) {
      if (!config.metrics_from_all)
        throw;
      out.warnings.push_back(std::string("quadratic column left empty: ") + e.what());
    }
  }

  for (std::size_t p = 0; p + 1 < frames.size(); ++p) {
    const auto [a, b] =
        alignDistributions(frames[p].distribution, frames[p + 1].distribution);
    DistanceRow row;
    row.pair = p;
    row.site_a = series.label(p);
    row.site_b = series.label(p + 1);
    auto set = [&](Metric m, double v) { row.values[static_cast<std::size_t>(m)] = v; };
    for (Metric m : out.metrics) {
      switch (m) {
      case Metric::D1:
        set(m, dq(a, b, 1.0));
        break;
      case Metric::D2:
        set(m, dq(a, b, 2.0));
        break;
      case Metric::Dinf:
        set(m, dq(a, b, kInfinity));
        break;
      case Metric::DqS:
        set(m, dqS(a, b, pairSingularBins(a, b), dc.q, dc.omega));
        break;
      case Metric::MinkowskiR:
        set(m, minkowski(a, b, dc.minkowski_r));
        break;
      case Metric::Intersection:
        set(m, histIntersection(a, b));
        break;
      case Metric::KL:
        set(m, klDivergence(a, b, dc.kl_epsilon));
        break;
      case Metric::Quadratic:
        if (A) {
          if (A->size() != a.size())
            A = SimilarityMatrix::gaussian(a.quantization, dc.sigma_a);
          set(m, quadraticForm(a, b, *A));
        }
        break;
      case Metric::RMS:
        set(m, rmsMultifield(series.frames[p], series.frames[p + 1]));
        break;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

DistanceSeries computeDistanceSeries(const FrameSeries& series, const PipelineConfig& config) {
  series.validate();
  config.validate();
  const RangeQuantization quant = buildQuantization(series, config.quantization);
  const auto frames = analyzeSeries(series, quant, config.tau, config.mode, config.threads);
  DistanceSeries out = distancesFromAnalyses(series, frames, config);
  out.warnings.insert(out.warnings.begin(), quant.warnings.begin(), quant.warnings.end());
  return out;
}

std::size_t argmax(const std::vector<double>& values) {
  if (values.empty())
    throw Error("argmax of an empty series");
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                  values.begin());
}

double median(std::vector<double> values) {
  if (values.empty())
    throw Error("median of an empty series");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace fibertrack
