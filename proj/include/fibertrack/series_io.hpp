#pragma once

#include "fibertrack/grid.hpp"

#include <filesystem>
#include <string>

namespace fibertrack {

// MFG layout: a series.json manifest plus one headerless raw file per
// (frame, field) holding nx*ny*nz little-endian binary64 values, x-fastest.

FrameSeries loadSeries(const std::filesystem::path& manifest);

/// Writes `series.json` and the raw files into `dir` (created if missing).
/// Returns the manifest path.
std::filesystem::path writeSeries(const FrameSeries& series, const std::filesystem::path& dir);

/// Reads one raw field file; throws on missing or truncated files.
std::vector<double> readRawField(const std::filesystem::path& path, std::size_t count);
void writeRawField(const std::filesystem::path& path, const std::vector<double>& values);

/// Resolves "<manifest>#<site>" to one frame. Without "#site" the first frame
/// is returned.
MultifieldFrame loadFrame(const std::string& ref);

} // namespace fibertrack
