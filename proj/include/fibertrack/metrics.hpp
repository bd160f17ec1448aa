#pragma once

#include "fibertrack/distribution.hpp"

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace fibertrack {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DistanceConfig {
  double q = 1.0;          // >= 1, or kInfinity
  double omega = 13.0;     // singular-bin weight, >= 1
  double kl_epsilon = 1e-9;
  double sigma_a = 1.0;    // quadratic-form Gaussian bandwidth, in bins
  double minkowski_r = 3.0;

  void validate() const;
};

/// Parses "inf"/"infinity" or a real >= 1.
double parseExponent(const std::string& text);

// ---------------------------------------------------------------------------
// Point-wise distances between aligned pmfs

/// (sum |p - p'|^q)^(1/q); q = kInfinity gives the sup norm.
double dq(const FiberDistribution& a, const FiberDistribution& b, double q);

/// dq with the terms of bins in S multiplied by omega. For q = kInfinity the
/// weight drops out and this is the sup norm.
double dqS(const FiberDistribution& a, const FiberDistribution& b, const SingularBinSet& S,
           double q, double omega);

/// Union of both distributions' singular flags.
SingularBinSet pairSingularBins(const FiberDistribution& a, const FiberDistribution& b);

// ---------------------------------------------------------------------------
// Classical histogram measures

double minkowski(const FiberDistribution& a, const FiberDistribution& b, double r);

/// 1 - sum min(h, k) / sum k
double histIntersection(const FiberDistribution& a, const FiberDistribution& b);

/// sum h log(h / k) after replacing both pmfs by (p + eps) / (1 + eps m).
double klDivergence(const FiberDistribution& a, const FiberDistribution& b, double epsilon);

/// Symmetric bin-similarity matrix with unit diagonal. Gaussian matrices are
/// evaluated on demand from per-field tables and never stored densely.
class SimilarityMatrix {
public:
  static constexpr std::size_t kMaxGaussianBins = 4096;

  static SimilarityMatrix identity(std::size_t n);
  /// a_ij = exp(-|i - j|^2 / sigma^2) on bin multi-indices.
  static SimilarityMatrix gaussian(const RangeQuantization& quant, double sigma);
  /// Row-major n x n; validated for symmetry, range [0,1] and unit diagonal.
  static SimilarityMatrix dense(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const;

private:
  enum class Kind { Identity, Gaussian, Dense };
  Kind kind_ = Kind::Identity;
  std::size_t n_ = 0;
  std::vector<double> dense_;
  RangeQuantization quant_;
  std::vector<std::vector<double>> tables_; // per field, indexed by |i_k - j_k|
};

/// sqrt((h - k)^T A (h - k))
double quadraticForm(const FiberDistribution& a, const FiberDistribution& b,
                     const SimilarityMatrix& A);

// ---------------------------------------------------------------------------
// Field-space baseline

/// sqrt(mean over vertices of sum over fields of squared differences).
double rmsMultifield(const MultifieldFrame& fa, const MultifieldFrame& fb);

// ---------------------------------------------------------------------------
// Metric-axiom harness

struct WeightedMetric {
  SingularBinSet singular;
  double omega = 1.0;
};

struct AxiomReport {
  std::size_t triples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Smallest d(x,y) + d(y,z) - d(x,z) seen over all orderings.
  double worst_triangle_margin = kInfinity;
  /// Largest |d(x,y) - d(y,x)|.
  double worst_symmetry_gap = 0.0;
  std::vector<std::string> entries; // one line per violation

  bool ok() const { return violations == 0; }
};

inline constexpr double kTriangleTolerance = 1e-12;
inline constexpr double kIdentityTolerance = 1e-15;

/// Checks non-negativity, identity of indiscernibles, symmetry and the
/// triangle inequality for dq and for dqS under each weighted variant.
AxiomReport checkMetricAxioms(const std::vector<std::array<FiberDistribution, 3>>& samples,
                              double q, const std::vector<WeightedMetric>& weighted = {});

} // namespace fibertrack
