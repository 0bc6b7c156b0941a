#include "fograil/trajectory.hpp"

namespace fograil {

std::string to_string(SegmentMode mode) {
  switch (mode) {
    case SegmentMode::Zero: return "zero";
    case SegmentMode::Saturated: return "saturated";
    case SegmentMode::ClosedForm: return "closed_form";
  }
  return "unknown";
}

std::vector<Segment> segments_from_modes(const std::vector<SegmentMode>& modes) {
  std::vector<Segment> out;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (!out.empty() && out.back().mode == modes[m]) {
      out.back().last = m;
    } else {
      out.push_back({m, m, modes[m]});
    }
  }
  return out;
}

SegmentMode PowerTrajectory::mode_at(std::size_t n, std::size_t m) const {
  if (n < segments.size()) {
    for (const auto& s : segments[n]) {
      if (m >= s.first && m <= s.last) return s.mode;
    }
  }
  return power[n][m] == 0.0 ? SegmentMode::Zero : SegmentMode::ClosedForm;
}

PowerTrajectory PowerTrajectory::constant(const numerics::TimeGrid& g,
                                          const std::vector<double>& levels) {
  PowerTrajectory p(g, levels.size());
  for (std::size_t n = 0; n < levels.size(); ++n) {
    p.power[n].assign(g.size(), levels[n]);
  }
  p.label = "constant";
  return p;
}

}  // namespace fograil
