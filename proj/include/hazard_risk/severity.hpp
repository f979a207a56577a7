#pragma once

// Safe advisory speed from friction, grade and sight distance, and the
// severity score of the resulting speed reduction.
//
// Units: sight distance in feet, speeds in mph, grade as a decimal slope.

#include <algorithm>
#include <array>
#include <cmath>

#include "hazard_risk/error.hpp"

namespace hazard_risk {

struct SpeedProfile {
  double v_fhwa = 0.0;      // stopping-sight-distance speed
  double v_scaled = 0.0;    // state-adjusted speed
  double v_advisory = 0.0;  // min(design, scaled)
  double v_design = 0.0;
  double reduction_pct = 0.0;
};

// State DOT adjustment applied to the FHWA speed.
inline constexpr double kAdvisoryScale = 15.0 / 22.0;

// Lower (inclusive) edges of severity scores 2..5 in percent reduction. These
// are the exact fractions 1/15, 1/5, 1/3 and 2/3 of design speed, which the
// score table prints rounded as 6.67, 20, 33.33 and 66.67.
inline constexpr std::array<double, 4> kSeverityScoreEdges{
    100.0 / 15.0, 20.0, 100.0 / 3.0, 200.0 / 3.0};

inline double fhwa_safe_speed(double mu, double grade, double sight_ft) {
  const double traction = mu + grade;
  if (!std::isfinite(traction) || !(traction > 0.0)) {
    throw DomainError("fhwa_safe_speed: mu + grade must be > 0");
  }
  if (!std::isfinite(sight_ft) || sight_ft < 0.0) {
    throw ValidationError("fhwa_safe_speed: sight distance must be >= 0 ft");
  }
  const double root = std::sqrt(13.47 + 0.12 * sight_ft / traction);
  // sqrt(13.47) slightly exceeds 3.67, so the numerator is never negative.
  return std::max(0.0, (-3.67 + root) / (0.06 / traction));
}

inline SpeedProfile advisory_speed(double v_fhwa, double v_design) {
  if (!std::isfinite(v_design) || !(v_design > 0.0)) {
    throw ValidationError("advisory_speed: design speed must be > 0 mph");
  }
  if (!std::isfinite(v_fhwa) || v_fhwa < 0.0) {
    throw ValidationError("advisory_speed: safe speed must be >= 0 mph");
  }
  SpeedProfile p;
  p.v_fhwa = v_fhwa;
  p.v_scaled = kAdvisoryScale * v_fhwa;
  p.v_design = v_design;
  p.v_advisory = std::min(v_design, p.v_scaled);
  p.reduction_pct =
      std::clamp(100.0 * (v_design - p.v_advisory) / v_design, 0.0, 100.0);
  return p;
}

inline SpeedProfile speed_profile(double mu, double grade, double sight_ft,
                                  double v_design) {
  return advisory_speed(fhwa_safe_speed(mu, grade, sight_ft), v_design);
}

inline int score_severity(double reduction_pct) {
  if (!(reduction_pct >= 0.0 && reduction_pct <= 100.0)) {
    throw ValidationError("speed reduction must be in [0, 100] percent");
  }
  int score = 1;
  for (double edge : kSeverityScoreEdges) {
    if (reduction_pct < edge) return score;
    ++score;
  }
  return score;
}

}  // namespace hazard_risk
