#include "fibertrack/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fibertrack {

namespace fs = std::filesystem;

std::string formatReal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream openForWrite(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write " + path.string());
  return out;
}

std::string fixed2(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escapeXml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

} // namespace

void writeDistancesCsv(std::ostream& out, const DistanceSeries& series) {
  out << "pair,site_a,site_b";
  for (Metric m : kAllMetrics)
    out << ',' << metricName(m);
  out << '\n';
  for (const auto& row : series.rows) {
    out << row.pair << ',' << row.site_a << ',' << row.site_b;
    for (Metric m : kAllMetrics) {
      out << ',';
      if (const auto v = row.get(m))
        out << formatReal(*v);
    }
    out << '\n';
  }
}

void writeDistancesCsv(const fs::path& path, const DistanceSeries& series) {
  auto out = openForWrite(path);
  writeDistancesCsv(out, series);
  if (!out)
    throw Error("failed writing " + path.string());
}

void writeHistogramCsv(std::ostream& out, const FiberComponentHistogram& hist) {
  const std::size_t r = hist.quantization.fieldCount();
  for (std::size_t k = 0; k < r; ++k)
    out << (k ? "," : "") << 'i' << (k + 1);
  for (std::size_t k = 0; k < r; ++k)
    out << ",lo" << (k + 1);
  out << ",count,measure,singular\n";
  for (const auto& b : hist.bins) {
    for (std::size_t k = 0; k < r; ++k)
      out << (k ? "," : "") << b.index[k];
    for (std::size_t k = 0; k < r; ++k)
      out << ',' << formatReal(hist.quantization.lower(k, b.index[k]));
    out << ',' << b.count << ',' << formatReal(b.measure) << ',' << (b.singular ? 1 : 0) << '\n';
  }
}

void writeHistogramCsv(const fs::path& path, const FiberComponentHistogram& hist) {
  auto out = openForWrite(path);
  writeHistogramCsv(out, hist);
  if (!out)
    throw Error("failed writing " + path.string());
}

void writeJacobiCsv(std::ostream& out, const JacobiElementSet& jset, const SingularBinSet& bins,
                    const RangeQuantization& quant) {
  const std::size_t r = quant.fieldCount();
  out << "kind,id";
  for (std::size_t k = 0; k < r; ++k)
    out << ",i" << (k + 1);
  out << '\n';
  const std::string blanks(r, ',');
  for (auto t : jset.tets)
    out << "tet," << t << blanks << '\n';
  for (auto f : jset.triangles)
    out << "triangle," << f << blanks << '\n';
  for (auto id : bins.bins) {
    out << "bin," << id;
    for (int i : quant.unravel(id))
      out << ',' << i;
    out << '\n';
  }
}

void writeJacobiCsv(const fs::path& path, const JacobiElementSet& jset, const SingularBinSet& bins,
                    const RangeQuantization& quant) {
  auto out = openForWrite(path);
  writeJacobiCsv(out, jset, bins, quant);
  if (!out)
    throw Error("failed writing " + path.string());
}

std::string renderSvgPlot(const DistanceSeries& series, const std::vector<Metric>& metrics) {
  if (metrics.empty())
    throw Error("plot needs at least one metric");
  if (series.rows.empty())
    throw Error("plot needs a non-empty distance series");

  constexpr double kWidth = 800, kHeight = 480;
  constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
  constexpr double plotW = kWidth - kLeft - kRight, plotH = kHeight - kTop - kBottom;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

  std::vector<std::vector<double>> columns;
  double vmax = 0.0;
  for (Metric m : metrics) {
    columns.push_back(series.column(m));
    for (double v : columns.back())
      vmax = std::max(vmax, v);
  }
  const double ymax = vmax > 0.0 ? 1.05 * vmax : 1.0;
  const std::size_t n = series.rows.size();
  auto xAt = [&](std::size_t i) {
    return n == 1 ? kLeft + plotW / 2 : kLeft + plotW * static_cast<double>(i) / (n - 1);
  };
  auto yAt = [&](double v) { return kTop + plotH * (1.0 - v / ymax); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 480\" width=\"800\" "
         "height=\"480\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"480\" fill=\"white\"/>\n";
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop + plotH) << "\" x2=\""
      << fixed2(kLeft + plotW) << "\" y2=\"" << fixed2(kTop + plotH) << "\"/>\n"
      << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop) << "\" x2=\"" << fixed2(kLeft)
      << "\" y2=\"" << fixed2(kTop + plotH) << "\"/>\n</g>\n";

  svg << "<g class=\"yticks\">\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = ymax * t / 5.0;
    const double y = yAt(v);
    svg << "<line x1=\"" << fixed2(kLeft - 4) << "\" y1=\"" << fixed2(y) << "\" x2=\""
        << fixed2(kLeft) << "\" y2=\"" << fixed2(y) << "\" stroke=\"black\"/>"
        << "<text x=\"" << fixed2(kLeft - 6) << "\" y=\"" << fixed2(y + 4)
        << "\" text-anchor=\"end\">" << formatReal(std::round(v * 1e4) / 1e4) << "</text>\n";
  }
  svg << "</g>\n<g class=\"xticks\">\n";
  const std::size_t step = std::max<std::size_t>(1, (n + 9) / 10);
  for (std::size_t i = 0; i < n; i += step) {
    const auto& row = series.rows[i];
    svg << "<text x=\"" << fixed2(xAt(i)) << "\" y=\"" << fixed2(kTop + plotH + 16)
        << "\" text-anchor=\"middle\">" << escapeXml(row.site_a + "-" + row.site_b) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << fixed2(kLeft + plotW / 2) << "\" y=\"" << fixed2(kHeight - 10)
      << "\" text-anchor=\"middle\">consecutive site pair</text>\n";
  svg << "<text x=\"16\" y=\"" << fixed2(kTop + plotH / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << fixed2(kTop + plotH / 2) << ")\">distance</text>\n";

  for (std::size_t c = 0; c < columns.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    svg << "<polyline class=\"series\" data-metric=\"" << metricName(metrics[c])
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i)
      svg << (i ? " " : "") << fixed2(xAt(i)) << ',' << fixed2(yAt(columns[c][i]));
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\">\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const double y = kTop + 10 + 18 * static_cast<double>(c);
    const double x = kLeft + plotW + 15;
    svg << "<line x1=\"" << fixed2(x) << "\" y1=\"" << fixed2(y) << "\" x2=\"" << fixed2(x + 20)
        << "\" y2=\"" << fixed2(y) << "\" stroke=\"" << kColors[c % std::size(kColors)]
        << "\" stroke-width=\"2\"/><text x=\"" << fixed2(x + 26) << "\" y=\"" << fixed2(y + 4)
        << "\">" << metricName(metrics[c]) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void emitSvgPlot(const DistanceSeries& series, const std::vector<Metric>& metrics,
                 const fs::path& path) {
  const std::string svg = renderSvgPlot(series, metrics);
  auto out = openForWrite(path);
  out << svg;
  if (!out)
    throw Error("failed writing " + path.string());
}

} // namespace fibertrack
