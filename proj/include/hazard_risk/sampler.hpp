#pragma once

// Synthetic case-study data: truncated-normal friction and sight-distance
// draws for every scenario, plus per-scenario risk statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hazard_risk/error.hpp"
#include "hazard_risk/hazard_model.hpp"
#include "hazard_risk/risk.hpp"

namespace hazard_risk {

// Below this acceptance mass rejection sampling is refused outright.
inline constexpr double kMinAcceptanceMass = 1e-6;

namespace detail {

// Uniform on the open interval (0, 1) from the top 53 bits of a 64-bit draw.
// Written out rather than using std::uniform_real_distribution so the stream
// is identical across standard library implementations.
template <class Rng>
double uniform_open01(Rng& rng) {
  static_assert(std::is_same_v<typename Rng::result_type, std::uint64_t> &&
                    Rng::min() == 0 &&
                    Rng::max() == std::numeric_limits<std::uint64_t>::max(),
                "need a full-range 64-bit generator");
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Box-Muller, cosine branch only.
template <class Rng>
double standard_normal(Rng& rng) {
  const double u1 = uniform_open01(rng);
  const double u2 = uniform_open01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

}  // namespace detail

inline double truncated_normal_mass(double mean, double sigma, double lower,
                                    double upper) {
  return detail::normal_cdf((upper - mean) / sigma) -
         detail::normal_cdf((lower - mean) / sigma);
}

// Draw from N(mean, sigma) conditioned on [lower, upper] by redrawing until
// the value lands inside the bounds.
template <class Rng>
double truncated_normal(double mean, double sigma, double lower, double upper,
                        Rng& rng) {
  if (!std::isfinite(mean) || !std::isfinite(lower) || !std::isfinite(upper) ||
      !(lower < upper)) {
    throw ValidationError("truncated_normal: need finite lower < upper");
  }
  if (!std::isfinite(sigma) || !(sigma > 0.0)) {
    throw ValidationError("truncated_normal: sigma must be > 0");
  }
  const double mass = truncated_normal_mass(mean, sigma, lower, upper);
  if (!(mass >= kMinAcceptanceMass)) {
    throw DomainError("truncated_normal: acceptance region mass below 1e-6");
  }
  // Failure odds after this many tries are about exp(-50).
  const auto max_tries = static_cast<std::uint64_t>(std::ceil(50.0 / mass));
  for (std::uint64_t i = 0; i < max_tries; ++i) {
    const double x = mean + sigma * detail::standard_normal(rng);
    if (x >= lower && x <= upper) return x;
  }
  throw DomainError("truncated_normal: retry budget exhausted");
}

struct SamplerConfig {
  std::uint64_t seed = 42;
  std::size_t samples_per_scenario = 100;
  double sigma_rule = 6.0;  // sigma = band width / sigma_rule, mean = midpoint
  bool parallel = false;
};

inline void validate(const SamplerConfig& c) {
  if (c.samples_per_scenario < 1) {
    throw ValidationError("samples must be >= 1");
  }
  if (!std::isfinite(c.sigma_rule) || !(c.sigma_rule > 0.0)) {
    throw ValidationError("sigma_rule must be > 0");
  }
}

struct SampleRecord {
  std::size_t scenario_id = 0;
  double mu = 0.0;
  double sight_ft = 0.0;
};

struct SampleSet {
  std::vector<Scenario> scenarios;
  std::vector<SampleRecord> records;  // grouped by scenario, in scenario order
};

// Independent generator per scenario, derived from (seed, scenario id), so
// scenarios can be drawn in any order or concurrently.
inline std::mt19937_64 scenario_stream(std::uint64_t seed,
                                       std::size_t scenario_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(scenario_id)};
  return std::mt19937_64(seq);
}

namespace detail {

inline std::vector<SampleRecord> draw_scenario(const SamplerConfig& config,
                                               const HazardBand& friction,
                                               const HazardBand& sight,
                                               std::size_t scenario_id) {
  auto rng = scenario_stream(config.seed, scenario_id);
  std::vector<SampleRecord> out;
  out.reserve(config.samples_per_scenario);
  const double mu_sigma = friction.width() / config.sigma_rule;
  const double s_sigma = sight.width() / config.sigma_rule;
  // Draw k of friction is paired with draw k of sight distance.
  for (std::size_t k = 0; k < config.samples_per_scenario; ++k) {
    const double mu = truncated_normal(friction.midpoint(), mu_sigma,
                                       friction.lower, friction.upper, rng);
    const double s = truncated_normal(sight.midpoint(), s_sigma, sight.lower,
                                      sight.upper, rng);
    out.push_back({scenario_id, mu, s});
  }
  return out;
}

}  // namespace detail

inline SampleSet generate_dataset(const SamplerConfig& config,
                                  const BandCatalog& catalog) {
  validate(config);
  SampleSet set;
  set.scenarios = scenario_grid(catalog);
  const auto draw = [&](const Scenario& sc) {
    return detail::draw_scenario(
        config, catalog.friction_bands[sc.friction_index],
        catalog.sampling_visibility_bands[sc.visibility_index], sc.id);
  };

  std::vector<std::vector<SampleRecord>> per_scenario;
  per_scenario.reserve(set.scenarios.size());
  if (config.parallel) {
    std::vector<std::future<std::vector<SampleRecord>>> jobs;
    for (const auto& sc : set.scenarios) {
      jobs.push_back(std::async(std::launch::async, draw, std::cref(sc)));
    }
    for (auto& j : jobs) per_scenario.push_back(j.get());
  } else {
    for (const auto& sc : set.scenarios) per_scenario.push_back(draw(sc));
  }

  set.records.reserve(set.scenarios.size() * config.samples_per_scenario);
  for (auto& chunk : per_scenario) {
    set.records.insert(set.records.end(), chunk.begin(), chunk.end());
  }
  return set;
}

// Scores every sample against its own scenario's joint probability.
inline std::vector<Assessment> assess_dataset(const SampleSet& samples,
                                              const JointProbabilityTable& joint,
                                              double grade,
                                              double design_speed_mph) {
  std::vector<Assessment> out;
  out.reserve(samples.records.size());
  for (const auto& r : samples.records) {
    const auto& sc = samples.scenarios.at(r.scenario_id - 1);
    out.push_back(assess_in_scenario(
        EnvironmentReading{r.mu, r.sight_ft, grade, design_speed_mph}, sc.id,
        joint.at(sc.friction_label, sc.visibility_label)));
  }
  return out;
}

struct ScenarioStats {
  std::size_t scenario_id = 0;
  std::string friction_label;
  std::string visibility_label;
  int probability_score = 1;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;        // population standard deviation
  double lower_3sigma = 0.0;  // mean - 3 sd, clamped to the 1..25 scale
  double upper_3sigma = 0.0;  // mean + 3 sd, clamped to the 1..25 scale
  int min = 0;
  int max = 0;
};

// Returns one entry per scenario, sorted ascending by mean risk (ties keep
// scenario order).
inline std::vector<ScenarioStats> scenario_statistics(
    const SampleSet& samples, std::span<const Assessment> assessments) {
  if (assessments.size() != samples.records.size()) {
    throw ValidationError("scenario_statistics: every sample must be assessed");
  }
  std::vector<ScenarioStats> stats;
  for (const auto& sc : samples.scenarios) {
    ScenarioStats s;
    s.scenario_id = sc.id;
    s.friction_label = sc.friction_label;
    s.visibility_label = sc.visibility_label;
    s.min = std::numeric_limits<int>::max();
    s.max = std::numeric_limits<int>::min();
    double sum = 0.0;
    for (std::size_t i = 0; i < assessments.size(); ++i) {
      if (samples.records[i].scenario_id != sc.id) continue;
      const int r = assessments[i].risk_score;
      s.probability_score = assessments[i].probability_score;
      ++s.count;
      sum += r;
      s.min = std::min(s.min, r);
      s.max = std::max(s.max, r);
    }
    if (s.count == 0) {
      s.min = s.max = 0;
      stats.push_back(std::move(s));
      continue;
    }
    s.mean = sum / static_cast<double>(s.count);
    double ss = 0.0;
    for (std::size_t i = 0; i < assessments.size(); ++i) {
      if (samples.records[i].scenario_id != sc.id) continue;
      const double d = assessments[i].risk_score - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(s.count));
    s.lower_3sigma = std::clamp(s.mean - 3.0 * s.stddev, 1.0, 25.0);
    s.upper_3sigma = std::clamp(s.mean + 3.0 * s.stddev, 1.0, 25.0);
    stats.push_back(std::move(s));
  }
  std::stable_sort(stats.begin(), stats.end(),
                   [](const ScenarioStats& a, const ScenarioStats& b) {
                     return a.mean < b.mean;
                   });
  return stats;
}

}  // namespace hazard_risk
