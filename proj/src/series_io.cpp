#include "fibertrack/series_io.hpp"

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fibertrack {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t toLittle(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little)
    return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i)
    r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

template <typename T, std::size_t N>
std::array<T, N> readTriple(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != N)
    throw Error(std::string("manifest: '") + key + "' must be an array of " + std::to_string(N));
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = j[key][i].get<T>();
  return out;
}

// Labels are written back as integers; fall back to the frame index.
long long siteNumber(const FrameSeries& s, std::size_t i) {
  if (i < s.site_labels.size()) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s.site_labels[i], &used);
      if (used == s.site_labels[i].size())
        return v;
    } catch (const std::exception&) {
    }
  }
  return static_cast<long long>(i);
}

} // namespace

std::vector<double> readRawField(const fs::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open raw file: " + path.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  if (bytes < count * 8)
    throw Error("raw file truncated: " + path.string() + " holds " + std::to_string(bytes / 8) +
                " values, expected " + std::to_string(count));
  if (bytes > count * 8)
    throw Error("raw file too long: " + path.string() + " holds " + std::to_string(bytes / 8) +
                " values, expected " + std::to_string(count));
  std::vector<double> values(count);
  std::vector<std::uint64_t> raw(count);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 8));
  if (!in)
    throw Error("failed reading raw file: " + path.string());
  for (std::size_t i = 0; i < count; ++i)
    values[i] = std::bit_cast<double>(toLittle(raw[i]));
  return values;
}

void writeRawField(const fs::path& path, const std::vector<double>& values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write raw file: " + path.string());
  std::vector<std::uint64_t> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    raw[i] = toLittle(std::bit_cast<std::uint64_t>(values[i]));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * 8));
  if (!out)
    throw Error("failed writing raw file: " + path.string());
}

namespace {

// Parses the manifest and raw files; per-frame checks only.
FrameSeries readManifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in)
    throw Error("cannot open manifest: " + manifest.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object())
    throw Error("manifest must be a JSON object");

  GridDomain grid;
  FrameSeries series;
  std::vector<std::string> names;
  try {
    grid.dims = readTriple<int, 3>(j, "dims");
    grid.spacing = readTriple<double, 3>(j, "spacing");
    if (!j.contains("fields") || !j["fields"].is_array() || j["fields"].empty())
      throw Error("manifest: 'fields' must be a non-empty array");
    names = j["fields"].get<std::vector<std::string>>();
    if (!j.contains("frames") || !j["frames"].is_array())
      throw Error("manifest: 'frames' must be an array");

    const fs::path base = manifest.parent_path();
    int index = 0;
    for (const auto& fj : j["frames"]) {
      MultifieldFrame frame;
      frame.grid = grid;
      frame.grid.origin = readTriple<double, 3>(fj, "origin");
      frame.time_index = index;
      frame.grid.validate();
      if (fj.contains("site"))
        series.site_labels.push_back(std::to_string(fj["site"].get<long long>()));
      else
        series.site_labels.push_back(std::to_string(index));
      if (!fj.contains("data") || !fj["data"].is_object())
        throw Error("manifest: frame " + std::to_string(index) + " lacks a 'data' object");
      if (fj["data"].size() != names.size())
        throw Error("manifest: frame " + std::to_string(index) + " field count mismatch");
      for (const auto& name : names) {
        if (!fj["data"].contains(name))
          throw Error("manifest: frame " + std::to_string(index) + " lacks field '" + name + "'");
        const fs::path raw = base / fj["data"][name].get<std::string>();
        frame.fields.push_back({name, readRawField(raw, grid.vertexCount())});
      }
      series.frames.push_back(std::move(frame));
      ++index;
    }
  } catch (const json::exception& e) {
    throw Error("manifest: " + std::string(e.what()));
  }
  for (const auto& f : series.frames)
    f.validate();
  return series;
}

} // namespace

FrameSeries loadSeries(const fs::path& manifest) {
  FrameSeries series = readManifest(manifest);
  series.validate();
  return series;
}

fs::path writeSeries(const FrameSeries& series, const fs::path& dir) {
  series.validate();
  fs::create_directories(dir);
  const auto& g = series.frames.front().grid;
  json j;
  j["dims"] = g.dims;
  j["spacing"] = g.spacing;
  j["fields"] = series.fieldNames();
  j["frames"] = json::array();
  for (std::size_t i = 0; i < series.frames.size(); ++i) {
    const auto& f = series.frames[i];
    const long long site = siteNumber(series, i);
    json fj;
    fj["site"] = site;
    fj["origin"] = f.grid.origin;
    fj["data"] = json::object();
    for (const auto& field : f.fields) {
      const std::string rel = field.name + "_" + std::to_string(i) + ".raw";
      writeRawField(dir / rel, field.values);
      fj["data"][field.name] = rel;
    }
    j["frames"].push_back(std::move(fj));
  }
  const fs::path manifest = dir / "series.json";
  std::ofstream out(manifest, std::ios::trunc);
  if (!out)
    throw Error("cannot write manifest: " + manifest.string());
  out << j.dump(2) << "\n";
  return manifest;
}

MultifieldFrame loadFrame(const std::string& ref) {
  const auto hash = ref.rfind('#');
  const std::string path = hash == std::string::npos ? ref : ref.substr(0, hash);
  const FrameSeries series = readManifest(path);
  if (series.frames.empty())
    throw Error("manifest has no frames: " + path);
  if (hash == std::string::npos)
    return series.frames.front();
  const std::string site = ref.substr(hash + 1);
  for (std::size_t i = 0; i < series.frames.size(); ++i)
    if (series.label(i) == site)
      return series.frames[i];
  throw Error("no frame with site '" + site + "' in " + path);
}

} // namespace fibertrack
