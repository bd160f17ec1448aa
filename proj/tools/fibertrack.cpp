// fibertrack command-line driver: gen, histogram, jacobi, compare.

#include "fibertrack/datagen.hpp"
#include "fibertrack/pipeline.hpp"
#include "fibertrack/report.hpp"
#include "fibertrack/series_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace ft = fibertrack;

namespace {

constexpr int kExitPipeline = 1;
constexpr int kExitFlags = 2;
constexpr int kDefaultJacobiBins = 16;

/// Raised for flag values CLI11 accepts syntactically but the pipeline rejects.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuantFlags {
  std::vector<double> slab_widths;
  std::vector<int> bin_counts;

  void attach(CLI::App* cmd, bool required) {
    auto* w = cmd->add_option("--slab-widths", slab_widths, "per-field slab width, comma separated")
                  ->delimiter(',');
    auto* c = cmd->add_option("--bin-counts", bin_counts, "per-field bin count, comma separated")
                  ->delimiter(',');
    w->excludes(c);
    c->excludes(w);
    if (required) {
      auto* grp = cmd->add_option_group("quantization");
      grp->add_option(w);
      grp->add_option(c);
      grp->require_option(1);
    }
  }

  ft::QuantizationRequest request(std::size_t fields, int fallback_bins) const {
    ft::QuantizationRequest req;
    req.slab_widths = slab_widths;
    req.bin_counts = bin_counts;
    if (req.slab_widths.empty() && req.bin_counts.empty())
      req.bin_counts.assign(fields, fallback_bins);
    const std::size_t given = req.slab_widths.empty() ? req.bin_counts.size() : req.slab_widths.size();
    if (given != fields)
      throw FlagError("expected " + std::to_string(fields) + " quantization entries, got " +
                      std::to_string(given));
    for (double w : req.slab_widths)
      if (!(w > 0.0))
        throw FlagError("slab widths must be > 0");
    for (int c : req.bin_counts)
      if (c < 1)
        throw FlagError("bin counts must be >= 1");
    return req;
  }
};

std::vector<std::string> splitNames(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty())
      out.push_back(std::move(item));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

ft::MultifieldFrame loadSelectedFrame(const std::string& ref, const std::string& fields) {
  auto frame = ft::loadFrame(ref);
  if (!fields.empty())
    frame = frame.select(splitNames(fields));
  return frame;
}

void printWarnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings)
    std::cerr << "fibertrack: warning: " << w << '\n';
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "translated-paraboloid";
  std::string out;
  ft::SyntheticSpec spec;
  std::vector<int> dims{20, 20, 20};
  std::vector<double> c1s{0, 0, 0}, c1e{-2.5, 0, 0}, c2s{0, 0, 0}, c2e{2.5, 0, 0};
};

void attachGen(CLI::App* cmd, GenArgs& a) {
  cmd->add_option("--kind", a.kind, "translated-paraboloid | separating-blobs")
      ->check(CLI::IsMember({"translated-paraboloid", "separating-blobs"}))
      ->capture_default_str();
  cmd->add_option("--out", a.out, "output directory")->required();
  cmd->add_option("--dims", a.dims, "grid vertices nx,ny,nz")->delimiter(',')->expected(3)
      ->capture_default_str();
  cmd->add_option("--n-sites", a.spec.n_sites, "number of frames")->capture_default_str();
  cmd->add_option("--step", a.spec.step, "translation per site")->capture_default_str();
  cmd->add_option("--box-lo", a.spec.box_lo, "site-0 box lower corner")->capture_default_str();
  cmd->add_option("--box-hi", a.spec.box_hi, "site-0 box upper corner")->capture_default_str();
  cmd->add_option("--blob-box-lo", a.spec.blob_box_lo)->capture_default_str();
  cmd->add_option("--blob-box-hi", a.spec.blob_box_hi)->capture_default_str();
  cmd->add_option("--center1-start", a.c1s)->delimiter(',')->expected(3)->capture_default_str();
  cmd->add_option("--center1-end", a.c1e)->delimiter(',')->expected(3)->capture_default_str();
  cmd->add_option("--center2-start", a.c2s)->delimiter(',')->expected(3)->capture_default_str();
  cmd->add_option("--center2-end", a.c2e)->delimiter(',')->expected(3)->capture_default_str();
  cmd->add_option("--sigma", a.spec.sigma, "blob width")->capture_default_str();
  cmd->add_option("--split-isovalue", a.spec.split_isovalue)->capture_default_str();
}

ft::Vec3 toVec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

int runGen(GenArgs& a) {
  auto& spec = a.spec;
  spec.kind = a.kind == "separating-blobs" ? ft::SyntheticKind::SeparatingBlobs
                                           : ft::SyntheticKind::TranslatedParaboloid;
  spec.dims = {a.dims[0], a.dims[1], a.dims[2]};
  spec.center1_start = toVec3(a.c1s);
  spec.center1_end = toVec3(a.c1e);
  spec.center2_start = toVec3(a.c2s);
  spec.center2_end = toVec3(a.c2e);
  try {
    spec.validate();
  } catch (const ft::Error& e) {
    throw FlagError(e.what());
  }

  const auto gen = ft::generate(spec);
  const auto manifest = ft::writeSeries(gen.series, a.out);

  nlohmann::ordered_json meta;
  meta["kind"] = a.kind;
  meta["dims"] = spec.dims;
  meta["n_sites"] = spec.n_sites;
  if (spec.kind == ft::SyntheticKind::TranslatedParaboloid) {
    meta["step"] = spec.step;
    meta["box_lo"] = spec.box_lo;
    meta["box_hi"] = spec.box_hi;
  } else {
    meta["blob_box_lo"] = spec.blob_box_lo;
    meta["blob_box_hi"] = spec.blob_box_hi;
    meta["center1_start"] = a.c1s;
    meta["center1_end"] = a.c1e;
    meta["center2_start"] = a.c2s;
    meta["center2_end"] = a.c2e;
    meta["sigma"] = spec.sigma;
    meta["split_isovalue"] = spec.split_isovalue;
  }
  meta["split_site"] = gen.split_site ? nlohmann::ordered_json(*gen.split_site) : nullptr;
  const auto metaPath = std::filesystem::path(a.out) / "metadata.json";
  std::ofstream out(metaPath, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ft::Error("cannot write " + metaPath.string());
  out << meta.dump(2) << '\n';

  std::cout << manifest.string() << '\n';
  if (gen.split_site)
    std::cout << "split_site " << *gen.split_site << '\n';
  return 0;
}

// ---------------------------------------------------------- histogram

struct HistogramArgs {
  std::string frame, fields, out = "hist.csv", mode = "count";
  double tau = ft::kDefaultJacobiTau;
  QuantFlags quant;
};

int runHistogram(const HistogramArgs& a) {
  if (!(a.tau > 0.0))
    throw FlagError("--tau must be > 0");
  const auto frame = loadSelectedFrame(a.frame, a.fields);
  const auto quant = ft::buildQuantization(std::vector<ft::MultifieldFrame>{frame},
                                           a.quant.request(frame.fieldCount(), kDefaultJacobiBins));
  printWarnings(quant.warnings);
  const auto analysis = ft::analyzeFrame(frame, quant, a.tau, ft::PmfMode::Count);
  ft::writeHistogramCsv(a.out, analysis.histogram);
  return 0;
}

// ------------------------------------------------------------- jacobi

struct JacobiArgs {
  std::string frame, fields, out = "jacobi.csv";
  double tau = ft::kDefaultJacobiTau;
  QuantFlags quant;
};

int runJacobi(const JacobiArgs& a) {
  if (!(a.tau > 0.0))
    throw FlagError("--tau must be > 0");
  const auto frame = loadSelectedFrame(a.frame, a.fields);
  const auto quant = ft::buildQuantization(std::vector<ft::MultifieldFrame>{frame},
                                           a.quant.request(frame.fieldCount(), kDefaultJacobiBins));
  printWarnings(quant.warnings);
  const auto topo = ft::buildTopology(frame.grid);
  const auto jset = ft::markSingularElements(frame, a.tau, &topo);
  const auto bins = ft::projectSingularBins(jset, frame, quant, nullptr, &topo);
  ft::writeJacobiCsv(a.out, jset, bins, quant);
  return 0;
}

// ------------------------------------------------------------ compare

struct CompareArgs {
  std::string series, fields, q = "1", metrics = "all", mode = "count", out = "distances.csv", svg;
  double omega = 13.0, tau = ft::kDefaultJacobiTau, kl_epsilon = 1e-9, sigma_a = 1.0,
         minkowski_r = 3.0;
  unsigned threads = 0;
  QuantFlags quant;
};

ft::PipelineConfig compareConfig(const CompareArgs& a, std::size_t fields) {
  ft::PipelineConfig cfg;
  try {
    cfg.distance.q = ft::parseExponent(a.q);
    cfg.distance.omega = a.omega;
    cfg.distance.kl_epsilon = a.kl_epsilon;
    cfg.distance.sigma_a = a.sigma_a;
    cfg.distance.minkowski_r = a.minkowski_r;
    cfg.tau = a.tau;
    cfg.mode = ft::parsePmfMode(a.mode);
    cfg.metrics = ft::parseMetricList(a.metrics);
    cfg.metrics_from_all = a.metrics == "all";
    cfg.threads = a.threads;
    cfg.validate();
  } catch (const ft::Error& e) {
    throw FlagError(e.what());
  }
  cfg.quantization = a.quant.request(fields, 0);
  return cfg;
}

int runCompare(const CompareArgs& a) {
  auto series = ft::loadSeries(a.series);
  if (!a.fields.empty())
    series = series.select(splitNames(a.fields));
  const auto cfg = compareConfig(a, series.fieldCount());

  const auto result = ft::computeDistanceSeries(series, cfg);
  printWarnings(result.warnings);
  ft::writeDistancesCsv(a.out, result);

  if (!a.svg.empty()) {
    std::vector<ft::Metric> plotted;
    for (ft::Metric m : result.metrics)
      if (!result.rows.empty() && result.rows.front().get(m))
        plotted.push_back(m);
    ft::emitSvgPlot(result, plotted, a.svg);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"fibertrack: fiber-component distributions and distances for time-varying multifields"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* genCmd = app.add_subcommand("gen", "write a synthetic series");
  attachGen(genCmd, gen);

  HistogramArgs hist;
  auto* histCmd = app.add_subcommand("histogram", "fiber-component histogram of one frame");
  histCmd->add_option("--frame", hist.frame, "<manifest>#<site>")->required();
  histCmd->add_option("--fields", hist.fields, "comma-separated field subset");
  histCmd->add_option("--tau", hist.tau, "relative Jacobi tolerance")->capture_default_str();
  histCmd->add_option("--out", hist.out)->capture_default_str();
  hist.quant.attach(histCmd, true);

  JacobiArgs jac;
  auto* jacCmd = app.add_subcommand("jacobi", "singular elements and bins of one frame");
  jacCmd->add_option("--frame", jac.frame, "<manifest>#<site>")->required();
  jacCmd->add_option("--fields", jac.fields, "comma-separated field subset");
  jacCmd->add_option("--tau", jac.tau, "relative Jacobi tolerance")->capture_default_str();
  jacCmd->add_option("--out", jac.out)->capture_default_str();
  jac.quant.attach(jacCmd, false);

  CompareArgs cmp;
  auto* cmpCmd = app.add_subcommand("compare", "distance series over consecutive frames");
  cmpCmd->add_option("--series", cmp.series, "series manifest (series.json)")->required();
  cmpCmd->add_option("--fields", cmp.fields, "comma-separated field subset");
  cmpCmd->add_option("--q", cmp.q, "exponent of d_q and d_q^S (number or inf)")->capture_default_str();
  cmpCmd->add_option("--omega", cmp.omega, "singular-bin weight")->capture_default_str();
  cmpCmd->add_option("--tau", cmp.tau, "relative Jacobi tolerance")->capture_default_str();
  cmpCmd->add_option("--kl-epsilon", cmp.kl_epsilon)->capture_default_str();
  cmpCmd->add_option("--sigma-a", cmp.sigma_a, "quadratic-form similarity width")
      ->capture_default_str();
  cmpCmd->add_option("--minkowski-r", cmp.minkowski_r)->capture_default_str();
  cmpCmd->add_option("--metrics", cmp.metrics, "all or a list such as d1,dqS")
      ->capture_default_str();
  cmpCmd->add_option("--mode", cmp.mode, "count | measure")->capture_default_str();
  cmpCmd->add_option("--out", cmp.out)->capture_default_str();
  cmpCmd->add_option("--svg", cmp.svg, "also write a line chart");
  cmpCmd->add_option("--threads", cmp.threads, "worker threads, 0 = all cores")
      ->capture_default_str();
  cmp.quant.attach(cmpCmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFlags;
  }

  try {
    if (*genCmd)
      return runGen(gen);
    if (*histCmd)
      return runHistogram(hist);
    if (*jacCmd)
      return runJacobi(jac);
    return runCompare(cmp);
  } catch (const FlagError& e) {
    std::cerr << "fibertrack: bad flag: " << e.what() << '\n';
    return kExitFlags;
  } catch (const std::exception& e) {
    std::cerr << "fibertrack: error: " << e.what() << '\n';
    return kExitPipeline;
  }
}
