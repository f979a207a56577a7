// hazard_risk: compound roadway-hazard risk scoring from the command line.
//
//   hazard_risk simulate --seed 42 --samples 100 --out run/
//   hazard_risk assess --mu 0.1 --sight-ft 150
//   hazard_risk replay --input readings.csv --out assessed.csv
//   hazard_risk matrix --format csv

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hazard_risk/commands.hpp"

namespace {

using hazard_risk::VisibilityBasis;
using hazard_risk::cli::Format;

const std::map<std::string, VisibilityBasis> kBasisNames{
    {"sensor", VisibilityBasis::Sensor},
    {"literature", VisibilityBasis::Literature}};

}  // namespace

int main(int argc, char** argv) {
  namespace cli = hazard_risk::cli;

  CLI::App app{"Compound roadway-hazard risk scoring"};
  app.set_version_flag("--version", std::string(hazard_risk::kVersion));
  app.require_subcommand(1);

  std::optional<std::string> config;
  app.add_option("--config", config,
                 "Crash-rate CSV (dimension,label,lower,upper,crash_rate); "
                 "defaults to $HAZARD_RISK_CONFIG, then built-in tables");

  // simulate
  cli::SimulateOptions sim;
  std::string sim_out = ".";
  auto* simulate = app.add_subcommand(
      "simulate", "Generate and score the 16-scenario synthetic dataset");
  simulate->add_option("--seed", sim.sampler.seed, "Random seed")
      ->capture_default_str();
  simulate->add_option("--samples", sim.sampler.samples_per_scenario,
                       "Samples per scenario")
      ->capture_default_str();
  simulate->add_option("--sigma-rule", sim.sampler.sigma_rule,
                       "sigma = band width / sigma-rule")
      ->capture_default_str();
  simulate->add_option("--grade", sim.grade, "Road grade (decimal)")
      ->capture_default_str();
  simulate->add_option("--design-speed", sim.design_speed_mph,
                       "Design speed (mph)")
      ->capture_default_str();
  simulate->add_option("--out", sim_out, "Output directory")
      ->capture_default_str();
  simulate->add_flag("--parallel", sim.sampler.parallel,
                     "Draw scenarios concurrently (same output)");

  // assess
  cli::AssessOptions as;
  std::string as_format = "json";
  std::string as_basis = "sensor";
  auto* assess = app.add_subcommand("assess", "Score one environment reading");
  assess->add_option("--mu", as.reading.mu, "Friction coefficient (0, 1]")
      ->required();
  assess->add_option("--sight-ft", as.reading.sight_distance_ft,
                     "Sight distance (ft)")
      ->required();
  assess->add_option("--grade", as.reading.grade, "Road grade (decimal)")
      ->capture_default_str();
  assess->add_option("--design-speed", as.reading.design_speed_mph,
                     "Design speed (mph)")
      ->capture_default_str();
  assess->add_option("--format", as_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  assess->add_option("--visibility-bands", as_basis,
                     "Visibility bands used to classify sight distance")
      ->check(CLI::IsMember({"sensor", "literature"}))
      ->capture_default_str();

  // replay
  cli::ReplayOptions rp;
  std::string rp_input;
  std::optional<std::string> rp_out;
  std::string rp_basis = "sensor";
  auto* replay = app.add_subcommand(
      "replay", "Score a CSV log of readings (timestamp,mu,sight_ft[,grade][,design_speed])");
  replay->add_option("--input", rp_input, "Readings CSV")->required();
  replay->add_option("--out", rp_out, "Output CSV (default: stdout)");
  replay->add_option("--grade", rp.default_grade,
                     "Grade used when the log has no grade column")
      ->capture_default_str();
  replay->add_option("--design-speed", rp.default_design_speed_mph,
                     "Design speed used when the log has no design_speed column")
      ->capture_default_str();
  replay->add_option("--visibility-bands", rp_basis,
                     "Visibility bands used to classify sight distance")
      ->check(CLI::IsMember({"sensor", "literature"}))
      ->capture_default_str();

  // matrix
  std::string mx_format = "text";
  auto* matrix = app.add_subcommand("matrix", "Print the 5x5 risk matrix");
  matrix->add_option("--format", mx_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  const auto config_path =
      config ? std::optional<std::filesystem::path>(*config) : std::nullopt;

  if (*simulate) {
    sim.out_dir = sim_out;
    sim.config = config_path;
    return cli::run_simulate(sim, std::cout, std::cerr);
  }
  if (*assess) {
    as.format = as_format == "csv" ? Format::Csv : Format::Json;
    as.basis = kBasisNames.at(as_basis);
    as.config = config_path;
    return cli::run_assess(as, std::cout, std::cerr);
  }
  if (*replay) {
    rp.input = rp_input;
    if (rp_out) rp.out = *rp_out;
    rp.basis = kBasisNames.at(rp_basis);
    rp.config = config_path;
    return cli::run_replay(rp, std::cout, std::cerr);
  }
  const Format f = mx_format == "csv"    ? Format::Csv
                   : mx_format == "json" ? Format::Json
                                         : Format::Text;
  return cli::run_matrix(f, std::cout);
}
