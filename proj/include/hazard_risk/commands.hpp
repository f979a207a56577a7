#pragma once

// Subcommand implementations behind the hazard_risk CLI. Each returns a
// process exit code and writes diagnostics to `err`, so they can be driven
// directly from tests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hazard_risk/detail/csv.hpp"
#include "hazard_risk/error.hpp"
#include "hazard_risk/hazard_model.hpp"
#include "hazard_risk/probability.hpp"
#include "hazard_risk/report.hpp"
#include "hazard_risk/risk.hpp"
#include "hazard_risk/sampler.hpp"
#include "hazard_risk/version.hpp"

namespace hazard_risk::cli {

// sysexits-style codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 2,
  kUsage = 64,
  kDataError = 65,
  kNoInput = 66,
};

inline constexpr const char* kConfigEnvVar = "HAZARD_RISK_CONFIG";

enum class Format { Text, Json, Csv };

// Explicit path wins over the environment variable; neither means builtin.
inline LoadedCatalog resolve_catalog(
    const std::optional<std::filesystem::path>& explicit_path,
    std::ostream& err) {
  std::filesystem::path path;
  if (explicit_path) {
    path = *explicit_path;
  } else if (const char* env = std::getenv(kConfigEnvVar); env && *env) {
    path = env;
  }
  if (path.empty()) return {default_catalog(), "builtin"};
  auto loaded = load_catalog_file(path);
  if (loaded.source == "builtin") {
    err << "warning: config " << path.string()
        << " not found, using built-in crash rates\n";
  }
  return loaded;
}

struct SimulateOptions {
  SamplerConfig sampler;
  double grade = 0.0;
  double design_speed_mph = kDefaultDesignSpeedMph;
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> config;
};

namespace detail {

inline bool write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << content;
  f.flush();
  return static_cast<bool>(f);
}

}  // namespace detail

inline int run_simulate(const SimulateOptions& opt, std::ostream& out,
                        std::ostream& err) {
  LoadedCatalog loaded;
  try {
    loaded = resolve_catalog(opt.config, err);
    validate(opt.sampler);
    if (!std::isfinite(opt.design_speed_mph) || !(opt.design_speed_mph > 0.0)) {
      throw ValidationError("design-speed must be > 0 mph");
    }
    double min_mu = kMaxFriction;
    for (const auto& b : loaded.catalog.friction_bands) {
      min_mu = std::min(min_mu, b.lower);
    }
    if (!std::isfinite(opt.grade) || !(min_mu + opt.grade > 0.0)) {
      throw ValidationError("grade: lowest friction band plus grade must be > 0");
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const auto& catalog = loaded.catalog;
  const auto joint = joint_probability(catalog);
  SampleSet samples;
  std::vector<Assessment> assessed;
  try {
    samples = generate_dataset(opt.sampler, catalog);
    assessed = assess_dataset(samples, joint, opt.grade, opt.design_speed_mph);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  const auto stats = scenario_statistics(samples, assessed);

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) {
    err << "error: cannot create output directory " << opt.out_dir.string()
        << ": " << ec.message() << '\n';
    return kIoError;
  }

  report::RunManifest manifest;
  manifest.command = "simulate";
  manifest.tool_version = std::string(kVersion);
  manifest.config = report::Json{
      {"seed", opt.sampler.seed},
      {"samples_per_scenario", opt.sampler.samples_per_scenario},
      {"sigma_rule", opt.sampler.sigma_rule},
      {"design_speed_mph", opt.design_speed_mph},
      {"grade", opt.grade},
      {"table_source", loaded.source}};

  const auto emit = [&](const std::string& name, auto&& writer) {
    std::ostringstream buf;
    const std::size_t rows = writer(buf);
    if (!detail::write_file(opt.out_dir / name, buf.str())) {
      err << "error: cannot write " << (opt.out_dir / name).string() << '\n';
      return false;
    }
    manifest.outputs.push_back({name, rows});
    return true;
  };

  const bool ok =
      emit("samples.csv",
           [&](std::ostream& o) { return report::write_samples_csv(o, assessed); }) &&
      emit("scenario_stats.csv",
           [&](std::ostream& o) {
             return report::write_scenario_stats_csv(o, stats);
           }) &&
      emit("heatmap.csv",
           [&](std::ostream& o) {
             return report::write_heatmap_csv(o, risk_matrix());
           }) &&
      emit("marginals.csv",
           [&](std::ostream& o) {
             return report::write_marginals_csv(o, catalog);
           }) &&
      emit("joint.csv",
           [&](std::ostream& o) { return report::write_joint_csv(o, joint); });
  if (!ok) return kIoError;

  if (!detail::write_file(opt.out_dir / "manifest.json",
                          report::to_json(manifest).dump(2) + "\n")) {
    err << "error: cannot write manifest.json\n";
    return kIoError;
  }

  out << "wrote " << assessed.size() << " samples across "
      << samples.scenarios.size() << " scenarios to " << opt.out_dir.string()
      << '\n';
  return kOk;
}

struct AssessOptions {
  EnvironmentReading reading;
  Format format = Format::Json;
  VisibilityBasis basis = VisibilityBasis::Sensor;
  std::optional<std::filesystem::path> config;
};

inline int run_assess(const AssessOptions& opt, std::ostream& out,
                      std::ostream& err) {
  try {
    const auto loaded = resolve_catalog(opt.config, err);
    const auto joint = joint_probability(loaded.catalog);
    const auto a = assess(opt.reading, loaded.catalog, joint, opt.basis);
    if (opt.format == Format::Json) {
      out << report::to_json(a).dump(2) << '\n';
    } else {
      report::write_assessment_csv_header(out, false);
      report::write_assessment_csv_row(out, a);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

struct ReplayOptions {
  std::filesystem::path input;
  std::optional<std::filesystem::path> out;  // stdout when unset
  double default_grade = 0.0;
  double default_design_speed_mph = kDefaultDesignSpeedMph;
  VisibilityBasis basis = VisibilityBasis::Sensor;
  std::optional<std::filesystem::path> config;
};

struct ReplayResult {
  std::size_t assessed = 0;
  std::size_t skipped = 0;
};

// Reads `timestamp,mu,sight_ft[,grade][,design_speed]` rows and writes one
// assessed CSV row per valid input row. Bad rows are reported and skipped.
inline ReplayResult replay_stream(std::istream& in, std::ostream& out,
                                  std::ostream& err, const BandCatalog& catalog,
                                  const JointProbabilityTable& joint,
                                  const ReplayOptions& opt) {
  ReplayResult result;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> grade_col, speed_col;
  bool header_seen = false;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (hazard_risk::detail::trim(line).empty()) continue;
    const auto fields = hazard_risk::detail::split_fields(line);
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "timestamp" || fields[1] != "mu" ||
          fields[2] != "sight_ft") {
        throw ValidationError(
            "line " + std::to_string(line_no) +
            ": header must start with timestamp,mu,sight_ft");
      }
      for (std::size_t i = 3; i < fields.size(); ++i) {
        if (fields[i] == "grade" && !grade_col) {
          grade_col = i;
        } else if (fields[i] == "design_speed" && !speed_col) {
          speed_col = i;
        } else {
          throw ValidationError("line " + std::to_string(line_no) +
                                ": unexpected column '" +
                                std::string(fields[i]) + "'");
        }
      }
      columns = fields.size();
      header_seen = true;
      report::write_assessment_csv_header(out, true);
      continue;
    }

    const auto skip = [&](const std::string& why) {
      err << "warning: line " << line_no << ": " << why << ", skipped\n";
      ++result.skipped;
    };
    if (fields.size() != columns) {
      skip("expected " + std::to_string(columns) + " fields, got " +
           std::to_string(fields.size()));
      continue;
    }
    const auto number = [&](std::optional<std::size_t> col, double fallback)
        -> std::optional<double> {
      if (!col || fields[*col].empty()) return fallback;
      return hazard_risk::detail::parse_double(fields[*col]);
    };
    const auto mu = hazard_risk::detail::parse_double(fields[1]);
    const auto sight = hazard_risk::detail::parse_double(fields[2]);
    const auto grade = number(grade_col, opt.default_grade);
    const auto speed = number(speed_col, opt.default_design_speed_mph);
    if (!mu || !sight || !grade || !speed) {
      skip("non-numeric value");
      continue;
    }
    try {
      const auto a = assess(EnvironmentReading{*mu, *sight, *grade, *speed},
                            catalog, joint, opt.basis);
      report::write_assessment_csv_row(out, a, fields[0]);
      ++result.assessed;
    } catch (const std::exception& e) {
      skip(e.what());
    }
  }
  if (!header_seen) throw ValidationError("input has no header row");
  return result;
}

inline int run_replay(const ReplayOptions& opt, std::ostream& out,
                      std::ostream& err) {
  LoadedCatalog loaded;
  try {
    loaded = resolve_catalog(opt.config, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  std::ifstream in(opt.input);
  if (!in) {
    err << "error: cannot read " << opt.input.string() << '\n';
    return kNoInput;
  }
  const auto joint = joint_probability(loaded.catalog);

  std::ostringstream buf;
  ReplayResult result;
  try {
    result = replay_stream(in, buf, err, loaded.catalog, joint, opt);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  if (result.assessed == 0) {
    err << "error: no valid rows in " << opt.input.string() << '\n';
    return kDataError;
  }
  if (opt.out) {
    if (!detail::write_file(*opt.out, buf.str())) {
      err << "error: cannot write " << opt.out->string() << '\n';
      return kIoError;
    }
  } else {
    out << buf.str();
  }
  err << "assessed " << result.assessed << " rows, skipped " << result.skipped
      << '\n';
  return kOk;
}

inline int run_matrix(Format format, std::ostream& out) {
  const auto m = risk_matrix();
  if (format == Format::Text) {
    // Highest severity on top, probability increasing to the right.
    out << "severity\\probability";
    for (int p = kMinScore; p <= kMaxScore; ++p) out << "  " << std::setw(13) << p;
    out << '\n';
    for (int s = kMaxScore; s >= kMinScore; --s) {
      out << std::setw(20) << s;
      for (const auto& c : m[s - 1]) {
        out << "  " << std::setw(2) << c.risk_score << ' ' << std::left
            << std::setw(10) << to_string(c.level) << std::right;
      }
      out << '\n';
    }
    return kOk;
  }
  if (format == Format::Csv) {
    report::write_heatmap_csv(out, m);
    return kOk;
  }
  report::Json cells = report::Json::array();
  for (const auto& row : m) {
    for (const auto& c : row) {
      cells.push_back(report::Json{{"severity_score", c.severity_score},
                                   {"probability_score", c.probability_score},
                                   {"risk_score", c.risk_score},
                                   {"risk_level", std::string(to_string(c.level))}});
    }
  }
  out << report::Json{{"rows", "severity"}, {"columns", "probability"},
                      {"cells", cells}}
             .dump(2)
      << '\n';
  return kOk;
}

}  // namespace hazard_risk::cli
