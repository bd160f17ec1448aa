#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibertrack {

/// Raised for malformed input data, inconsistent series, or bad parameters.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Vec3 = std::array<double, 3>;

/// Regular 3-D vertex lattice. Vertex (i,j,k) sits at origin + (i,j,k)*spacing.
struct GridDomain {
  std::array<int, 3> dims{2, 2, 2};
  Vec3 origin{0.0, 0.0, 0.0};
  Vec3 spacing{1.0, 1.0, 1.0};

  void validate() const;

  std::size_t vertexCount() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t cellCount() const {
    return static_cast<std::size_t>(dims[0] - 1) * (dims[1] - 1) * (dims[2] - 1);
  }
  // x-fastest, then y, then z
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * k);
  }
  std::array<int, 3> coords(std::size_t id) const {
    const auto nx = static_cast<std::size_t>(dims[0]);
    const auto ny = static_cast<std::size_t>(dims[1]);
    return {static_cast<int>(id % nx), static_cast<int>((id / nx) % ny),
            static_cast<int>(id / (nx * ny))};
  }
  Vec3 position(int i, int j, int k) const {
    return {origin[0] + i * spacing[0], origin[1] + j * spacing[1],
            origin[2] + k * spacing[2]};
  }
  Vec3 position(std::size_t id) const {
    const auto c = coords(id);
    return position(c[0], c[1], c[2]);
  }
  Vec3 extent() const {
    return {(dims[0] - 1) * spacing[0], (dims[1] - 1) * spacing[1],
            (dims[2] - 1) * spacing[2]};
  }
  double volume() const {
    const auto e = extent();
    return e[0] * e[1] * e[2];
  }
};

struct ScalarField {
  std::string name;
  std::vector<double> values;
};

/// r scalar fields sampled on one grid at one time step.
struct MultifieldFrame {
  GridDomain grid;
  std::vector<ScalarField> fields;
  int time_index = 0;

  void validate() const;
  std::size_t fieldCount() const { return fields.size(); }
  const ScalarField& field(const std::string& name) const;

  /// Keeps only the named fields, in the order given.
  MultifieldFrame select(const std::vector<std::string>& names) const;
};

/// Time-ordered frames sharing dims, spacing and field layout.
struct FrameSeries {
  std::vector<MultifieldFrame> frames;
  std::vector<std::string> site_labels;

  void validate() const;
  std::size_t fieldCount() const { return frames.empty() ? 0 : frames.front().fieldCount(); }
  std::vector<std::string> fieldNames() const;
  std::string label(std::size_t frame) const;
  FrameSeries select(const std::vector<std::string>& names) const;
};

/// Per-field exact (min, max) over the vertex samples.
std::vector<std::pair<double, double>> fieldRangeBox(const MultifieldFrame& frame);

} // namespace fibertrack
