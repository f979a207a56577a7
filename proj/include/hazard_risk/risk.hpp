#pragma once

// Composite risk = probability score x severity score, five risk levels, and
// the end-to-end assessment of one environment reading.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hazard_risk/error.hpp"
#include "hazard_risk/hazard_model.hpp"
#include "hazard_risk/probability.hpp"
#include "hazard_risk/severity.hpp"

namespace hazard_risk {

enum class RiskLevel { Low, LowMedium, Medium, High, Extreme };

inline constexpr std::string_view to_string(RiskLevel level) {
  switch (level) {
    case RiskLevel::Low: return "Low";
    case RiskLevel::LowMedium: return "Low-Medium";
    case RiskLevel::Medium: return "Medium";
    case RiskLevel::High: return "High";
    case RiskLevel::Extreme: return "Extreme";
  }
  return "?";
}

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 5;

inline int composite_risk(int probability_score, int severity_score) {
  if (probability_score < kMinScore || probability_score > kMaxScore) {
    throw ValidationError("probability score must be in 1..5");
  }
  if (severity_score < kMinScore || severity_score > kMaxScore) {
    throw ValidationError("severity score must be in 1..5");
  }
  return probability_score * severity_score;
}

inline RiskLevel risk_level(int score) {
  if (score < 1 || score > 25) throw ValidationError("risk score must be in 1..25");
  if (score <= 5) return RiskLevel::Low;
  if (score <= 10) return RiskLevel::LowMedium;
  if (score <= 15) return RiskLevel::Medium;
  if (score <= 20) return RiskLevel::High;
  return RiskLevel::Extreme;
}

struct RiskCell {
  int probability_score = 1;
  int severity_score = 1;
  int risk_score = 1;
  RiskLevel level = RiskLevel::Low;
};

// Indexed [severity - 1][probability - 1].
using RiskMatrix = std::array<std::array<RiskCell, kMaxScore>, kMaxScore>;

inline RiskMatrix risk_matrix() {
  RiskMatrix m{};
  for (int s = kMinScore; s <= kMaxScore; ++s) {
    for (int p = kMinScore; p <= kMaxScore; ++p) {
      const int score = composite_risk(p, s);
      m[s - 1][p - 1] = RiskCell{p, s, score, risk_level(score)};
    }
  }
  return m;
}

struct Assessment {
  EnvironmentReading reading;
  std::size_t scenario_id = 0;
  std::string friction_label;
  std::string visibility_label;
  double joint_probability = 0.0;
  int probability_score = 1;
  SpeedProfile speed;
  int severity_score = 1;
  int risk_score = 1;
  RiskLevel level = RiskLevel::Low;
};

// Scores a reading whose scenario is already known. The probability score
// belongs to the band pair; only severity depends on the reading itself.
inline Assessment assess_in_scenario(const EnvironmentReading& reading,
                                     std::size_t scenario_id,
                                     const JointEntry& joint) {
  validate(reading);
  Assessment a;
  a.reading = reading;
  a.scenario_id = scenario_id;
  a.friction_label = joint.friction_label;
  a.visibility_label = joint.visibility_label;
  a.joint_probability = joint.normalized_joint;
  a.probability_score = joint.probability_score;
  a.speed = speed_profile(reading.mu, reading.grade, reading.sight_distance_ft,
                          reading.design_speed_mph);
  a.severity_score = score_severity(a.speed.reduction_pct);
  a.risk_score = composite_risk(a.probability_score, a.severity_score);
  a.level = risk_level(a.risk_score);
  return a;
}

inline Assessment assess(const EnvironmentReading& reading,
                         const BandCatalog& catalog,
                         const JointProbabilityTable& joint,
                         VisibilityBasis basis = VisibilityBasis::Sensor) {
  const BandPair bands = classify(reading, catalog, basis);
  const auto& f = catalog.friction_bands[bands.friction].label;
  const auto& v = visibility_bands_for(catalog, basis)[bands.visibility].label;
  return assess_in_scenario(reading, bands.scenario_id(), joint.at(f, v));
}

}  // namespace hazard_risk
