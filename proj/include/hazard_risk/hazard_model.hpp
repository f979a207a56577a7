#pragma once

// Hazard bands for road-surface friction and visibility, classification of
// continuous readings into bands, and the 4x4 scenario grid.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hazard_risk/detail/csv.hpp"
#include "hazard_risk/error.hpp"

namespace hazard_risk {

enum class Dimension { Friction, Visibility };

inline constexpr std::string_view to_string(Dimension d) {
  return d == Dimension::Friction ? "friction" : "visibility";
}

inline constexpr std::size_t kBandsPerDimension = 4;
inline constexpr double kMaxFriction = 1.0;
inline constexpr double kMaxSightFt = 6562.0;     // visibility sensor ceiling
inline constexpr double kSensorFloorFt = 33.0;    // visibility sensor floor
inline constexpr double kDefaultDesignSpeedMph = 75.0;

struct HazardBand {
  Dimension dimension = Dimension::Friction;
  std::string label;
  double lower = 0.0;
  double upper = 0.0;
  double crash_rate = 0.0;  // crashes per 10^6 VMT

  double midpoint() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
  bool contains(double x) const { return x >= lower && x <= upper; }
};

// Bands are kept in hazard order (least hazardous first), which for both
// dimensions means strictly decreasing bounds: Dry..Icy, Clear..Very Dense Fog.
struct BandCatalog {
  std::vector<HazardBand> friction_bands;
  std::vector<HazardBand> visibility_bands;           // crash-rate literature bands
  std::vector<HazardBand> sampling_visibility_bands;  // sensor-aligned bands
};

// Which visibility band set a reading is classified against.
enum class VisibilityBasis { Sensor, Literature };

struct EnvironmentReading {
  double mu = 0.0;
  double sight_distance_ft = 0.0;
  double grade = 0.0;
  double design_speed_mph = kDefaultDesignSpeedMph;
};

struct Scenario {
  std::size_t id = 0;  // 1-based, friction-major
  std::size_t friction_index = 0;
  std::size_t visibility_index = 0;
  std::string friction_label;
  std::string visibility_label;
  std::string practicality;
};

struct BandPair {
  std::size_t friction = 0;
  std::size_t visibility = 0;

  std::size_t scenario_id() const {
    return friction * kBandsPerDimension + visibility + 1;
  }
};

namespace detail {

inline void validate_band_list(std::span<const HazardBand> bands,
                               Dimension dim, std::string_view what) {
  const std::string name(what);
  if (bands.size() != kBandsPerDimension) {
    throw ValidationError(name + ": expected " +
                          std::to_string(kBandsPerDimension) + " bands, got " +
                          std::to_string(bands.size()));
  }
  const double max_bound =
      dim == Dimension::Friction ? kMaxFriction : kMaxSightFt;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    const std::string where = name + " band '" + b.label + "'";
    if (b.dimension != dim) throw ValidationError(where + ": wrong dimension");
    if (b.label.empty()) throw ValidationError(name + ": empty band label");
    if (!std::isfinite(b.lower) || !std::isfinite(b.upper) ||
        !(b.lower < b.upper)) {
      throw ValidationError(where + ": lower must be < upper");
    }
    if (b.lower < 0.0 || b.upper > max_bound) {
      throw ValidationError(where + ": bounds outside [0, " +
                            format_number(max_bound) + "]");
    }
    if (!std::isfinite(b.crash_rate) || !(b.crash_rate > 0.0)) {
      throw ValidationError(where + ": crash_rate must be > 0");
    }
    if (i > 0 && b.upper > bands[i - 1].lower) {
      throw ValidationError(where +
                            ": bands must be non-overlapping and listed in "
                            "decreasing bound order");
    }
  }
}

}  // namespace detail

inline void validate(const BandCatalog& catalog) {
  detail::validate_band_list(catalog.friction_bands, Dimension::Friction,
                             "friction");
  detail::validate_band_list(catalog.visibility_bands, Dimension::Visibility,
                             "visibility");
  detail::validate_band_list(catalog.sampling_visibility_bands,
                             Dimension::Visibility, "sampling_visibility");
  for (std::size_t i = 0; i < kBandsPerDimension; ++i) {
    const auto& s = catalog.sampling_visibility_bands[i];
    if (s.label != catalog.visibility_bands[i].label) {
      throw ValidationError("sampling_visibility band '" + s.label +
                            "': labels must match visibility bands in order");
    }
    if (i > 0 && s.upper != catalog.sampling_visibility_bands[i - 1].lower) {
      throw ValidationError("sampling_visibility band '" + s.label +
                            "': sampling bands must be contiguous");
    }
  }
}

inline void validate(const EnvironmentReading& r) {
  if (!std::isfinite(r.mu) || !(r.mu > 0.0) || r.mu > kMaxFriction) {
    throw ValidationError("mu must be in (0, 1]");
  }
  if (!std::isfinite(r.sight_distance_ft) || r.sight_distance_ft < 0.0) {
    throw ValidationError("sight distance must be >= 0 ft");
  }
  if (!std::isfinite(r.grade)) throw ValidationError("grade must be finite");
  if (!(r.mu + r.grade > 0.0)) throw ValidationError("mu + grade must be > 0");
  if (!std::isfinite(r.design_speed_mph) || !(r.design_speed_mph > 0.0)) {
    throw ValidationError("design speed must be > 0 mph");
  }
}

inline BandCatalog default_catalog() {
  const auto f = [](std::string label, double lo, double hi, double rate) {
    return HazardBand{Dimension::Friction, std::move(label), lo, hi, rate};
  };
  const auto v = [](std::string label, double lo, double hi, double rate) {
    return HazardBand{Dimension::Visibility, std::move(label), lo, hi, rate};
  };
  BandCatalog c;
  c.friction_bands = {f("Dry", 0.70, 0.90, 1.90), f("Wet", 0.40, 0.60, 3.75),
                      f("Snow", 0.20, 0.30, 5.50), f("Icy", 0.05, 0.15, 9.00)};
  c.visibility_bands = {v("Clear", 1640, kMaxSightFt, 0.685),
                        v("Rain/Snow", 328, 656, 1.85),
                        v("Dense Fog", 164, 328, 4.95),
                        v("Very Dense Fog", kSensorFloorFt, 164, 18.70)};
  // Sensor-aligned bands reuse the literature crash rates by label.
  c.sampling_visibility_bands = {v("Clear", 4000, 6500, 0.685),
                                 v("Rain/Snow", 1000, 4000, 1.85),
                                 v("Dense Fog", 164, 1000, 4.95),
                                 v("Very Dense Fog", kSensorFloorFt, 164, 18.70)};
  return c;
}

// Maps a value to exactly one band. Gaps between neighbouring bands are split
// at their midpoint, values past either end clamp to the outermost band, and a
// value sitting on a cut point goes to the band with the higher bounds.
inline std::size_t classify_value(double value,
                                  std::span<const HazardBand> bands) {
  if (bands.empty()) throw ValidationError("cannot classify into empty band list");
  std::vector<std::size_t> order(bands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bands[a].lower < bands[b].lower;
  });
  std::size_t pick = order.front();
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double cut =
        0.5 * (bands[order[k - 1]].upper + bands[order[k]].lower);
    if (value >= cut) pick = order[k];
  }
  return pick;
}

inline std::span<const HazardBand> visibility_bands_for(
    const BandCatalog& catalog, VisibilityBasis basis) {
  return basis == VisibilityBasis::Sensor ? catalog.sampling_visibility_bands
                                          : catalog.visibility_bands;
}

inline BandPair classify(const EnvironmentReading& reading,
                         const BandCatalog& catalog,
                         VisibilityBasis basis = VisibilityBasis::Sensor) {
  validate(reading);
  return BandPair{
      classify_value(reading.mu, catalog.friction_bands),
      classify_value(reading.sight_distance_ft,
                     visibility_bands_for(catalog, basis))};
}

namespace detail {

struct PracticalityRow {
  std::string_view friction;
  std::string_view visibility;
  std::string_view label;
};

inline constexpr std::array<PracticalityRow, 16> kPracticality{{
    {"Dry", "Clear", "Common (normal driving)"},
    {"Dry", "Rain/Snow", "Rare (brief post-rain dry roads)"},
    {"Dry", "Dense Fog", "Possible (radiation fog on dry pavement)"},
    {"Dry", "Very Dense Fog", "Very Rare (extreme fog, no residual moisture)"},
    {"Wet", "Clear", "Common (roads slowly drying after rain)"},
    {"Wet", "Rain/Snow", "Common (ongoing precipitation)"},
    {"Wet", "Dense Fog", "Possible (humid/fog during or after rain)"},
    {"Wet", "Very Dense Fog", "Uncommon (heavy fog while wet)"},
    {"Snow", "Clear", "Common (post-snowfall clear skies)"},
    {"Snow", "Rain/Snow", "Rare (mixed sleet/rain over snow)"},
    {"Snow", "Dense Fog", "Rare (cold fog over snow-laden roads)"},
    {"Snow", "Very Dense Fog", "Common (active snowfall with low visibility)"},
    {"Icy", "Clear", "Possible (morning black ice before melting)"},
    {"Icy", "Rain/Snow", "Rare (freezing rain conditions)"},
    {"Icy", "Dense Fog", "Rare (ice fog in extreme cold)"},
    {"Icy", "Very Dense Fog", "Common (snow/ice with blowing snow)"},
}};

}  // namespace detail

// Practicality note for a band pair; empty for labels outside the built-in set.
inline std::string practicality(std::string_view friction,
                                std::string_view visibility) {
  for (const auto& row : detail::kPracticality) {
    if (row.friction == friction && row.visibility == visibility) {
      return std::string(row.label);
    }
  }
  return {};
}

inline std::vector<Scenario> scenario_grid(const BandCatalog& catalog) {
  validate(catalog);
  std::vector<Scenario> grid;
  grid.reserve(kBandsPerDimension * kBandsPerDimension);
  for (std::size_t f = 0; f < kBandsPerDimension; ++f) {
    for (std::size_t v = 0; v < kBandsPerDimension; ++v) {
      const auto& fl = catalog.friction_bands[f].label;
      const auto& vl = catalog.visibility_bands[v].label;
      grid.push_back(Scenario{BandPair{f, v}.scenario_id(), f, v, fl, vl,
                              practicality(fl, vl)});
    }
  }
  return grid;
}

// Crash-rate config: CSV with header `dimension,label,lower,upper,crash_rate`.
// Each dimension present in the file replaces that dimension's defaults and
// must list exactly four bands; absent dimensions keep their defaults.
inline BandCatalog load_catalog_csv(std::istream& in,
                                    BandCatalog base = default_catalog()) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<HazardBand> friction, visibility, sampling;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    const auto where = "config line " + std::to_string(line_no) + ": ";
    if (!header_seen) {
      const std::array<std::string_view, 5> expected{"dimension", "label",
                                                     "lower", "upper",
                                                     "crash_rate"};
      if (fields.size() != expected.size() ||
          !std::equal(fields.begin(), fields.end(), expected.begin())) {
        throw ValidationError(where +
                              "header must be dimension,label,lower,upper,"
                              "crash_rate");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) {
      throw ValidationError(where + "expected 5 fields, got " +
                            std::to_string(fields.size()));
    }
    HazardBand band;
    band.label = std::string(fields[1]);
    const auto lower = detail::parse_double(fields[2]);
    const auto upper = detail::parse_double(fields[3]);
    const auto rate = detail::parse_double(fields[4]);
    if (!lower) throw ValidationError(where + "lower is not a number");
    if (!upper) throw ValidationError(where + "upper is not a number");
    if (!rate) throw ValidationError(where + "crash_rate is not a number");
    if (!(*rate > 0.0)) throw ValidationError(where + "crash_rate must be > 0");
    band.lower = *lower;
    band.upper = *upper;
    band.crash_rate = *rate;
    if (fields[0] == "friction") {
      band.dimension = Dimension::Friction;
      friction.push_back(std::move(band));
    } else if (fields[0] == "visibility") {
      band.dimension = Dimension::Visibility;
      visibility.push_back(std::move(band));
    } else if (fields[0] == "sampling_visibility") {
      band.dimension = Dimension::Visibility;
      sampling.push_back(std::move(band));
    } else {
      throw ValidationError(where + "dimension must be friction, visibility "
                                    "or sampling_visibility");
    }
  }
  if (!header_seen) throw ValidationError("config: missing header row");
  if (!friction.empty()) base.friction_bands = std::move(friction);
  if (!visibility.empty()) base.visibility_bands = std::move(visibility);
  if (!sampling.empty()) base.sampling_visibility_bands = std::move(sampling);
  validate(base);
  return base;
}

struct LoadedCatalog {
  BandCatalog catalog;
  std::string source;  // "builtin" or the file path
};

// A path that does not exist falls back to the built-in tables.
inline LoadedCatalog load_catalog_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.empty() || !std::filesystem::exists(path, ec)) {
    return {default_catalog(), "builtin"};
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  return {load_catalog_csv(in), path.string()};
}

}  // namespace hazard_risk
