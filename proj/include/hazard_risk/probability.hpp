#pragma once

// Crash-rate normalization, joint probabilities of independent friction and
// visibility hazards, and ordinal probability scores.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hazard_risk/error.hpp"
#include "hazard_risk/hazard_model.hpp"

namespace hazard_risk {

struct MarginalEntry {
  std::string label;
  double probability = 0.0;
};

struct MarginalDistribution {
  Dimension dimension = Dimension::Friction;
  std::vector<MarginalEntry> probs;
};

struct JointEntry {
  std::string friction_label;
  std::string visibility_label;
  double raw_joint = 0.0;
  double normalized_joint = 0.0;
  int probability_score = 1;
};

struct JointProbabilityTable {
  std::vector<JointEntry> entries;  // friction-major, 16 rows

  const JointEntry& at(std::string_view friction,
                       std::string_view visibility) const {
    for (const auto& e : entries) {
      if (e.friction_label == friction && e.visibility_label == visibility) {
        return e;
      }
    }
    throw ValidationError("no joint entry for " + std::string(friction) +
                          " x " + std::string(visibility));
  }
};

// Upper (inclusive) edges of probability scores 1..4; anything above the last
// edge scores 5.
inline constexpr std::array<double, 4> kProbabilityScoreEdges{0.010, 0.020,
                                                              0.050, 0.100};

inline int score_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("joint probability must be in [0, 1]");
  }
  int score = 1;
  for (double edge : kProbabilityScoreEdges) {
    if (p <= edge) return score;
    ++score;
  }
  return score;
}

inline MarginalDistribution normalize_marginals(
    std::span<const HazardBand> bands) {
  if (bands.empty()) throw ValidationError("normalize_marginals: no bands");
  double total = 0.0;
  for (const auto& b : bands) {
    if (!std::isfinite(b.crash_rate) || !(b.crash_rate > 0.0)) {
      throw ValidationError("normalize_marginals: crash rate of '" + b.label +
                            "' must be > 0");
    }
    if (b.dimension != bands.front().dimension) {
      throw ValidationError("normalize_marginals: mixed dimensions");
    }
    total += b.crash_rate;
  }
  MarginalDistribution out{bands.front().dimension, {}};
  out.probs.reserve(bands.size());
  for (const auto& b : bands) {
    out.probs.push_back({b.label, b.crash_rate / total});
  }
  return out;
}

// Marginals need not sum to one: the 16 products are renormalized before
// scoring, so scaled inputs give the same table.
inline JointProbabilityTable joint_probability(const MarginalDistribution& pf,
                                               const MarginalDistribution& pv) {
  if (pf.dimension != Dimension::Friction ||
      pv.dimension != Dimension::Visibility) {
    throw ValidationError(
        "joint_probability: expected friction and visibility marginals");
  }
  if (pf.probs.size() != kBandsPerDimension ||
      pv.probs.size() != kBandsPerDimension) {
    throw ValidationError("joint_probability: each marginal needs " +
                          std::to_string(kBandsPerDimension) + " entries");
  }
  for (const auto* m : {&pf, &pv}) {
    for (const auto& e : m->probs) {
      if (!std::isfinite(e.probability) || !(e.probability > 0.0)) {
        throw ValidationError("joint_probability: probability of '" + e.label +
                              "' must be > 0");
      }
    }
  }

  JointProbabilityTable table;
  table.entries.reserve(pf.probs.size() * pv.probs.size());
  double total = 0.0;
  for (const auto& f : pf.probs) {
    for (const auto& v : pv.probs) {
      const double raw = f.probability * v.probability;
      total += raw;
      table.entries.push_back({f.label, v.label, raw, 0.0, 1});
    }
  }
  for (auto& e : table.entries) {
    e.normalized_joint = e.raw_joint / total;
    e.probability_score = score_probability(e.normalized_joint);
  }
  return table;
}

inline JointProbabilityTable joint_probability(const BandCatalog& catalog) {
  validate(catalog);
  return joint_probability(normalize_marginals(catalog.friction_bands),
                           normalize_marginals(catalog.visibility_bands));
}

}  // namespace hazard_risk
