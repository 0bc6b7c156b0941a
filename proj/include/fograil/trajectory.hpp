#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fograil/numerics.hpp"

namespace fograil {

enum class SegmentMode { Zero, Saturated, ClosedForm };

std::string to_string(SegmentMode mode);

/// Run of consecutive samples [first, last] sharing one mode.
struct Segment {
  std::size_t first = 0;
  std::size_t last = 0;
  SegmentMode mode = SegmentMode::ClosedForm;
};

/// Collapse per-sample modes into maximal runs.
std::vector<Segment> segments_from_modes(const std::vector<SegmentMode>& modes);

/// Per-RRH power samples on a grid. power[n][m] is RRH n at grid[m].
struct PowerTrajectory {
  numerics::TimeGrid grid;
  std::vector<std::vector<double>> power;
  std::vector<std::vector<Segment>> segments;  // empty when not classified
  std::string label;                            // e.g. "regime1/case2"

  PowerTrajectory(numerics::TimeGrid g, std::size_t n_rrh)
      : grid(std::move(g)), power(n_rrh, std::vector<double>(grid.size(), 0.0)) {}

  std::size_t num_rrh() const { return power.size(); }
  /// Sampled energy of RRH n (right-endpoint rule).
  double energy(std::size_t n) const { return numerics::integrate_samples(power[n], grid); }
  SegmentMode mode_at(std::size_t n, std::size_t m) const;

  static PowerTrajectory constant(const numerics::TimeGrid& g,
                                  const std::vector<double>& levels);
};

}  // namespace fograil
