#include "fibertrack/grid.hpp"
#include "fibertrack/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fibertrack {

void GridDomain::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 2)
      throw Error("grid dims must be >= 2 along every axis");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      throw Error("grid spacing must be positive and finite");
    if (!std::isfinite(origin[a]))
      throw Error("grid origin must be finite");
  }
}

void MultifieldFrame::validate() const {
  grid.validate();
  if (fields.empty())
    throw Error("frame needs at least one field");
  std::set<std::string> names;
  for (const auto& f : fields) {
    if (!names.insert(f.name).second)
      throw Error("duplicate field name: " + f.name);
    if (f.values.size() != grid.vertexCount())
      throw Error("field '" + f.name + "' has " + std::to_string(f.values.size()) +
                  " values, grid needs " + std::to_string(grid.vertexCount()));
    if (!std::all_of(f.values.begin(), f.values.end(), [](double v) { return std::isfinite(v); }))
      throw Error("field '" + f.name + "' contains non-finite values");
  }
}

const ScalarField& MultifieldFrame::field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name)
      return f;
  throw Error("no field named '" + name + "'");
}

MultifieldFrame MultifieldFrame::select(const std::vector<std::string>& names) const {
  if (names.empty())
    throw Error("field selection is empty");
  MultifieldFrame out{grid, {}, time_index};
  for (const auto& n : names)
    out.fields.push_back(field(n));
  return out;
}

void FrameSeries::validate() const {
  if (frames.size() < 2)
    throw Error("series needs >= 2 frames");
  if (!site_labels.empty() && site_labels.size() != frames.size())
    throw Error("site label count does not match frame count");
  const auto& first = frames.front();
  for (const auto& f : frames) {
    f.validate();
    if (f.grid.dims != first.grid.dims)
      throw Error("grid dims differ across frames");
    if (f.grid.spacing != first.grid.spacing)
      throw Error("grid spacing differs across frames");
    if (f.fields.size() != first.fields.size())
      throw Error("field count differs across frames");
    for (std::size_t i = 0; i < f.fields.size(); ++i)
      if (f.fields[i].name != first.fields[i].name)
        throw Error("field ordering differs across frames");
  }
}

std::vector<std::string> FrameSeries::fieldNames() const {
  std::vector<std::string> names;
  if (!frames.empty())
    for (const auto& f : frames.front().fields)
      names.push_back(f.name);
  return names;
}

std::string FrameSeries::label(std::size_t frame) const {
  return frame < site_labels.size() ? site_labels[frame] : std::to_string(frame);
}

FrameSeries FrameSeries::select(const std::vector<std::string>& names) const {
  FrameSeries out;
  out.site_labels = site_labels;
  out.frames.reserve(frames.size());
  for (const auto& f : frames)
    out.frames.push_back(f.select(names));
  return out;
}

std::vector<std::pair<double, double>> fieldRangeBox(const MultifieldFrame& frame) {
  std::vector<std::pair<double, double>> box;
  box.reserve(frame.fields.size());
  for (const auto& f : frame.fields) {
    const auto mm = simd::minMax(f.values);
    box.emplace_back(mm.lo, mm.hi);
  }
  return box;
}

} // namespace fibertrack
