#pragma once

#include "fibertrack/grid.hpp"

#include <optional>

namespace fibertrack {

enum class SyntheticKind { TranslatedParaboloid, SeparatingBlobs };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::TranslatedParaboloid;
  std::array<int, 3> dims{20, 20, 20};
  int n_sites = 21;

  // translated-paraboloid: site k samples [box_lo + k*step, box_hi + k*step]^3
  double step = 0.05;
  double box_lo = -5.5;
  double box_hi = 4.5;

  // separating-blobs: fixed box, centers move linearly from *_start to *_end
  double blob_box_lo = -5.0;
  double blob_box_hi = 5.0;
  Vec3 center1_start{0.0, 0.0, 0.0};
  Vec3 center1_end{-2.5, 0.0, 0.0};
  Vec3 center2_start{0.0, 0.0, 0.0};
  Vec3 center2_end{2.5, 0.0, 0.0};
  double sigma = 1.0;
  double split_isovalue = 0.5;

  void validate() const;
};

struct GeneratedSeries {
  FrameSeries series;
  std::optional<int> split_site; // separating-blobs only
};

/// height = z and paraboloid = x^2 + y^2 - z on a box translated along (1,1,1).
FrameSeries genTranslatedParaboloid(const SyntheticSpec& spec);

/// blobs = two unit Gaussians moving apart, height = z. The split site is the
/// first frame whose {blobs >= split_isovalue} vertex set has two components.
GeneratedSeries genSeparatingBlobs(const SyntheticSpec& spec);

GeneratedSeries generate(const SyntheticSpec& spec);

/// Components of {field >= iso} over grid vertices joined by Freudenthal mesh
/// edges (6 axis neighbours plus the 8 diagonal ones).
int countSuperlevelComponents(const GridDomain& grid, const std::vector<double>& field,
                              double iso);

} // namespace fibertrack
