#pragma once

// CSV and JSON emitters. CSV numbers use six significant digits and JSON uses
// shortest round-trip formatting; neither depends on the process locale.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hazard_risk/detail/csv.hpp"
#include "hazard_risk/hazard_model.hpp"
#include "hazard_risk/probability.hpp"
#include "hazard_risk/risk.hpp"
#include "hazard_risk/sampler.hpp"

namespace hazard_risk::report {

using detail::format_number;
using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSamplesHeader =
    "scenario_id,friction_label,visibility_label,mu,sight_ft,joint_prob,"
    "prob_score,v_fhwa_mph,v_scaled_mph,v_advisory_mph,reduction_pct,"
    "severity_score,risk_score,risk_level";

inline constexpr std::string_view kScenarioStatsHeader =
    "rank,scenario_id,friction_label,visibility_label,prob_score,n,mean_risk,"
    "std_risk,lower_3sigma,upper_3sigma,min_risk,max_risk";

inline constexpr std::string_view kHeatmapHeader =
    "severity_score,probability_score,risk_score,risk_level";

inline constexpr std::string_view kMarginalsHeader =
    "dimension,label,lower,upper,crash_rate,probability";

inline constexpr std::string_view kJointHeader =
    "friction_label,visibility_label,raw_joint,normalized_joint,prob_score";

// Columns shared by `assess --format csv` and replay output; replay prefixes
// a timestamp column.
inline constexpr std::string_view kAssessmentHeader =
    "mu,sight_ft,grade,design_speed,friction_label,visibility_label,"
    "joint_prob,prob_score,v_fhwa_mph,v_scaled_mph,v_advisory_mph,"
    "reduction_pct,severity_score,risk_score,risk_level";

namespace detail {

inline std::string speed_and_scores(const Assessment& a) {
  std::string s;
  s += format_number(a.joint_probability) + ',';
  s += std::to_string(a.probability_score) + ',';
  s += format_number(a.speed.v_fhwa) + ',';
  s += format_number(a.speed.v_scaled) + ',';
  s += format_number(a.speed.v_advisory) + ',';
  s += format_number(a.speed.reduction_pct) + ',';
  s += std::to_string(a.severity_score) + ',';
  s += std::to_string(a.risk_score) + ',';
  s += to_string(a.level);
  return s;
}

}  // namespace detail

inline std::size_t write_samples_csv(std::ostream& out,
                                     std::span<const Assessment> rows) {
  out << kSamplesHeader << '\n';
  for (const auto& a : rows) {
    out << a.scenario_id << ',' << a.friction_label << ','
        << a.visibility_label << ',' << format_number(a.reading.mu) << ','
        << format_number(a.reading.sight_distance_ft) << ','
        << detail::speed_and_scores(a) << '\n';
  }
  return rows.size();
}

inline std::size_t write_scenario_stats_csv(
    std::ostream& out, std::span<const ScenarioStats> stats) {
  out << kScenarioStatsHeader << '\n';
  std::size_t rank = 1;
  for (const auto& s : stats) {
    out << rank++ << ',' << s.scenario_id << ',' << s.friction_label << ','
        << s.visibility_label << ',' << s.probability_score << ',' << s.count
        << ',' << format_number(s.mean) << ',' << format_number(s.stddev)
        << ',' << format_number(s.lower_3sigma) << ','
        << format_number(s.upper_3sigma) << ',' << s.min << ',' << s.max
        << '\n';
  }
  return stats.size();
}

inline std::size_t write_heatmap_csv(std::ostream& out, const RiskMatrix& m) {
  out << kHeatmapHeader << '\n';
  std::size_t n = 0;
  for (const auto& row : m) {
    for (const auto& c : row) {
      out << c.severity_score << ',' << c.probability_score << ','
          << c.risk_score << ',' << to_string(c.level) << '\n';
      ++n;
    }
  }
  return n;
}

inline std::size_t write_marginals_csv(std::ostream& out,
                                       const BandCatalog& catalog) {
  out << kMarginalsHeader << '\n';
  std::size_t n = 0;
  for (const auto* bands : {&catalog.friction_bands, &catalog.visibility_bands}) {
    const auto dist = normalize_marginals(*bands);
    for (std::size_t i = 0; i < bands->size(); ++i) {
      const auto& b = (*bands)[i];
      out << to_string(b.dimension) << ',' << b.label << ','
          << format_number(b.lower) << ',' << format_number(b.upper) << ','
          << format_number(b.crash_rate) << ','
          << format_number(dist.probs[i].probability) << '\n';
      ++n;
    }
  }
  return n;
}

inline std::size_t write_joint_csv(std::ostream& out,
                                   const JointProbabilityTable& joint) {
  out << kJointHeader << '\n';
  for (const auto& e : joint.entries) {
    out << e.friction_label << ',' << e.visibility_label << ','
        << format_number(e.raw_joint) << ',' << format_number(e.normalized_joint)
        << ',' << e.probability_score << '\n';
  }
  return joint.entries.size();
}

inline void write_assessment_csv_header(std::ostream& out,
                                        bool with_timestamp) {
  if (with_timestamp) out << "timestamp,";
  out << kAssessmentHeader << '\n';
}

inline void write_assessment_csv_row(
    std::ostream& out, const Assessment& a,
    std::optional<std::string_view> timestamp = std::nullopt) {
  if (timestamp) out << *timestamp << ',';
  out << format_number(a.reading.mu) << ','
      << format_number(a.reading.sight_distance_ft) << ','
      << format_number(a.reading.grade) << ','
      << format_number(a.reading.design_speed_mph) << ',' << a.friction_label
      << ',' << a.visibility_label << ',' << detail::speed_and_scores(a)
      << '\n';
}

inline Json to_json(const Assessment& a) {
  Json j;
  j["mu"] = a.reading.mu;
  j["sight_ft"] = a.reading.sight_distance_ft;
  j["grade"] = a.reading.grade;
  j["design_speed_mph"] = a.reading.design_speed_mph;
  j["scenario_id"] = a.scenario_id;
  j["friction_label"] = a.friction_label;
  j["visibility_label"] = a.visibility_label;
  j["joint_prob"] = a.joint_probability;
  j["prob_score"] = a.probability_score;
  j["v_fhwa_mph"] = a.speed.v_fhwa;
  j["v_scaled_mph"] = a.speed.v_scaled;
  j["v_advisory_mph"] = a.speed.v_advisory;
  j["reduction_pct"] = a.speed.reduction_pct;
  j["severity_score"] = a.severity_score;
  j["risk_score"] = a.risk_score;
  j["risk_level"] = std::string(to_string(a.level));
  return j;
}

struct OutputFile {
  std::string file;
  std::size_t rows = 0;
};

struct RunManifest {
  std::string command;
  std::string tool_version;
  Json config = Json::object();
  std::vector<OutputFile> outputs;
};

inline Json to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["tool_version"] = m.tool_version;
  j["config"] = m.config;
  Json files = Json::array();
  for (const auto& f : m.outputs) {
    files.push_back(Json{{"file", f.file}, {"rows", f.rows}});
  }
  j["outputs"] = std::move(files);
  return j;
}

}  // namespace hazard_risk::report
