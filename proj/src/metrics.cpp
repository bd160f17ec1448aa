#include "fibertrack/metrics.hpp"
#include "fibertrack/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fibertrack {

void DistanceConfig::validate() const {
  if (!(q >= 1.0))
    throw Error("q must be >= 1");
  if (!(omega >= 1.0) || !std::isfinite(omega))
    throw Error("omega must be >= 1");
  if (!(kl_epsilon > 0.0))
    throw Error("kl epsilon must be > 0");
  if (!(sigma_a > 0.0))
    throw Error("sigma_a must be > 0");
  if (!(minkowski_r >= 1.0))
    throw Error("minkowski r must be >= 1");
}

double parseExponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf")
    return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error("not a number: '" + text + "'");
  }
  if (used != text.size())
    throw Error("not a number: '" + text + "'");
  if (!(v >= 1.0))
    throw Error("exponent must be >= 1, got " + text);
  return v;
}

namespace {

void requireAligned(const FiberDistribution& a, const FiberDistribution& b) {
  if (a.pmf.size() != b.pmf.size() || !(a.quantization == b.quantization))
    throw Error("unaligned spectra: align the distributions first");
}

std::vector<std::uint8_t> maskOf(const SingularBinSet& S, std::size_t n) {
  std::vector<std::uint8_t> mask(n, 0);
  for (auto id : S.bins) {
    if (id >= n)
      throw Error("singular bin id outside the spectrum");
    mask[id] = 1;
  }
  return mask;
}

// sum w_x |a_x - b_x|^q, evaluated as M^q * sum w_x (|d|/M)^q to avoid underflow.
// Returns the pair (M, scaled sum).
std::pair<double, double> scaledPowerSum(const FiberDistribution& a, const FiberDistribution& b,
                                         double q, const std::uint8_t* mask, double omega) {
  const double M = simd::maxAbsDiff(a.pmf, b.pmf);
  if (M == 0.0)
    return {0.0, 0.0};
  double s = 0.0;
  for (std::size_t i = 0; i < a.pmf.size(); ++i) {
    const double d = std::fabs(a.pmf[i] - b.pmf[i]);
    if (d == 0.0)
      continue;
    const double t = std::pow(d / M, q);
    s += (mask != nullptr && mask[i]) ? omega * t : t;
  }
  return {M, s};
}

} // namespace

double dq(const FiberDistribution& a, const FiberDistribution& b, double q) {
  requireAligned(a, b);
  if (!(q >= 1.0))
    throw Error("q must be >= 1");
  if (std::isinf(q))
    return simd::maxAbsDiff(a.pmf, b.pmf);
  if (q == 1.0)
    return simd::sumAbsDiff(a.pmf, b.pmf);
  if (q == 2.0)
    return std::sqrt(simd::sumSqDiff(a.pmf, b.pmf));
  const auto [M, s] = scaledPowerSum(a, b, q, nullptr, 1.0);
  return M * std::pow(s, 1.0 / q);
}

double dqS(const FiberDistribution& a, const FiberDistribution& b, const SingularBinSet& S,
           double q, double omega) {
  requireAligned(a, b);
  if (!(q >= 1.0))
    throw Error("q must be >= 1");
  if (!(omega >= 1.0))
    throw Error("omega must be >= 1");
  // unit weight is the unweighted metric
  if (omega == 1.0 || std::isinf(q))
    return dq(a, b, q);
  const auto mask = maskOf(S, a.pmf.size());
  if (q == 1.0) {
    const auto s = simd::splitAbsDiff(a.pmf, b.pmf, mask);
    return omega * s.masked + s.unmasked;
  }
  if (q == 2.0) {
    const auto s = simd::splitSqDiff(a.pmf, b.pmf, mask);
    return std::sqrt(omega * s.masked + s.unmasked);
  }
  const auto [M, s] = scaledPowerSum(a, b, q, mask.data(), omega);
  return M * std::pow(s, 1.0 / q);
}

SingularBinSet pairSingularBins(const FiberDistribution& a, const FiberDistribution& b) {
  requireAligned(a, b);
  SingularBinSet s;
  for (std::size_t i = 0; i < a.singular.size(); ++i)
    if (a.singular[i] || b.singular[i])
      s.bins.push_back(i);
  return s;
}

double minkowski(const FiberDistribution& a, const FiberDistribution& b, double r) {
  return dq(a, b, r);
}

double histIntersection(const FiberDistribution& a, const FiberDistribution& b) {
  requireAligned(a, b);
  double massB = 0.0;
  for (double v : b.pmf)
    massB += v;
  if (!(massB > 0.0))
    throw Error("histogram intersection needs a non-empty second histogram");
  return 1.0 - simd::sumMin(a.pmf, b.pmf) / massB;
}

double klDivergence(const FiberDistribution& a, const FiberDistribution& b, double epsilon) {
  requireAligned(a, b);
  if (!(epsilon > 0.0))
    throw Error("kl epsilon must be > 0");
  const double m = static_cast<double>(a.pmf.size());
  const double norm = 1.0 + epsilon * m;
  double s = 0.0;
  for (std::size_t i = 0; i < a.pmf.size(); ++i) {
    const double h = (a.pmf[i] + epsilon) / norm;
    const double k = (b.pmf[i] + epsilon) / norm;
    s += h * std::log(h / k);
  }
  return s;
}

SimilarityMatrix SimilarityMatrix::identity(std::size_t n) {
  SimilarityMatrix A;
  A.kind_ = Kind::Identity;
  A.n_ = n;
  return A;
}

SimilarityMatrix SimilarityMatrix::gaussian(const RangeQuantization& quant, double sigma) {
  if (!(sigma > 0.0))
    throw Error("similarity bandwidth must be > 0");
  if (quant.totalBins() > kMaxGaussianBins)
    throw Error("quadratic-form spectrum too large: " + std::to_string(quant.totalBins()) +
                " bins (limit " + std::to_string(kMaxGaussianBins) + ")");
  SimilarityMatrix A;
  A.kind_ = Kind::Gaussian;
  A.n_ = quant.totalBins();
  A.quant_ = quant;
  for (std::size_t k = 0; k < quant.fieldCount(); ++k) {
    std::vector<double> t(static_cast<std::size_t>(quant.binCount(k)));
    for (std::size_t d = 0; d < t.size(); ++d)
      t[d] = std::exp(-static_cast<double>(d * d) / (sigma * sigma));
    A.tables_.push_back(std::move(t));
  }
  return A;
}

SimilarityMatrix SimilarityMatrix::dense(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n)
    throw Error("similarity matrix must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 1.0)
      throw Error("similarity matrix needs a unit diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      if (!(v >= 0.0 && v <= 1.0))
        throw Error("similarity entries must lie in [0, 1]");
      if (v != values[j * n + i])
        throw Error("similarity matrix must be symmetric");
    }
  }
  SimilarityMatrix A;
  A.kind_ = Kind::Dense;
  A.n_ = n;
  A.dense_ = std::move(values);
  return A;
}

double SimilarityMatrix::operator()(std::size_t i, std::size_t j) const {
  switch (kind_) {
  case Kind::Identity:
    return i == j ? 1.0 : 0.0;
  case Kind::Dense:
    return dense_[i * n_ + j];
  case Kind::Gaussian: {
    double v = 1.0;
    for (std::size_t k = 0; k < tables_.size(); ++k) {
      const auto m = static_cast<std::size_t>(quant_.binCount(k));
      const std::size_t ik = i % m, jk = j % m;
      v *= tables_[k][ik > jk ? ik - jk : jk - ik];
      i /= m;
      j /= m;
    }
    return v;
  }
  }
  return 0.0;
}

double quadraticForm(const FiberDistribution& a, const FiberDistribution& b,
                     const SimilarityMatrix& A) {
  requireAligned(a, b);
  if (A.size() != a.pmf.size())
    throw Error("similarity matrix size does not match the spectrum");
  // only bins where the pmfs differ contribute
  std::vector<std::size_t> idx;
  std::vector<double> diff;
  for (std::size_t i = 0; i < a.pmf.size(); ++i) {
    const double d = a.pmf[i] - b.pmf[i];
    if (d != 0.0) {
      idx.push_back(i);
      diff.push_back(d);
    }
  }
  double s = 0.0;
  for (std::size_t x = 0; x < idx.size(); ++x) {
    double row = 0.0;
    for (std::size_t y = 0; y < idx.size(); ++y)
      row += A(idx[x], idx[y]) * diff[y];
    s += diff[x] * row;
  }
  return std::sqrt(std::max(s, 0.0));
}

double rmsMultifield(const MultifieldFrame& fa, const MultifieldFrame& fb) {
  if (fa.grid.dims != fb.grid.dims)
    throw Error("rms: grid dims differ");
  if (fa.fieldCount() != fb.fieldCount())
    throw Error("rms: field counts differ");
  const std::size_t m = fa.grid.vertexCount();
  double s = 0.0;
  for (std::size_t k = 0; k < fa.fieldCount(); ++k) {
    if (fa.fields[k].values.size() != m || fb.fields[k].values.size() != m)
      throw Error("rms: field length does not match grid");
    s += simd::sumSqDiff(fa.fields[k].values, fb.fields[k].values);
  }
  return std::sqrt(s / static_cast<double>(m));
}

AxiomReport checkMetricAxioms(const std::vector<std::array<FiberDistribution, 3>>& samples,
                              double q, const std::vector<WeightedMetric>& weighted) {
  AxiomReport report;
  report.triples = samples.size();
  struct Variant {
    std::string name;
    const WeightedMetric* w;
  };
  std::vector<Variant> variants{{"dq", nullptr}};
  for (std::size_t v = 0; v < weighted.size(); ++v) {
    std::ostringstream n;
    n << "dqS[omega=" << weighted[v].omega << ",|S|=" << weighted[v].singular.size() << "]";
    variants.push_back({n.str(), &weighted[v]});
  }
  auto fail = [&](std::size_t t, const std::string& what) {
    ++report.violations;
    std::ostringstream line;
    line << "triple " << t << ": " << what;
    report.entries.push_back(line.str());
  };

  for (std::size_t t = 0; t < samples.size(); ++t) {
    const auto& P = samples[t];
    for (const auto& var : variants) {
      auto d = [&](int i, int j) {
        return var.w ? dqS(P[i], P[j], var.w->singular, q, var.w->omega) : dq(P[i], P[j], q);
      };
      double D[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          D[i][j] = d(i, j);
      for (int i = 0; i < 3; ++i) {
        ++report.checks;
        if (D[i][i] != 0.0)
          fail(t, var.name + " d(P,P) != 0");
        for (int j = 0; j < 3; ++j) {
          if (i == j)
            continue;
          report.checks += 3;
          if (!(D[i][j] >= 0.0) || !std::isfinite(D[i][j]))
            fail(t, var.name + " negative or non-finite distance");
          const double gap = std::fabs(D[i][j] - D[j][i]);
          report.worst_symmetry_gap = std::max(report.worst_symmetry_gap, gap);
          if (gap != 0.0)
            fail(t, var.name + " asymmetric");
          const bool equal = simd::maxAbsDiff(P[i].pmf, P[j].pmf) <= kIdentityTolerance;
          if (equal != (D[i][j] == 0.0) && !(equal && D[i][j] <= kIdentityTolerance))
            fail(t, var.name + " identity of indiscernibles");
        }
      }
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int z = 0; z < 3; ++z) {
            if (x == y || y == z || x == z)
              continue;
            ++report.checks;
            const double margin = D[x][y] + D[y][z] - D[x][z];
            report.worst_triangle_margin = std::min(report.worst_triangle_margin, margin);
            if (margin < -kTriangleTolerance)
              fail(t, var.name + " triangle inequality");
          }
    }
  }
  if (report.worst_triangle_margin == kInfinity)
    report.worst_triangle_margin = 0.0;
  return report;
}

} // namespace fibertrack
