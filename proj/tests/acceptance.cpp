// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are fixed here and not tuned per run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hazard_risk/commands.hpp"
#include "oracle.hpp"

using namespace hazard_risk;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double x) { return detail::format_number(x); }

const ScenarioStats& find(const std::vector<ScenarioStats>& all,
                          std::string_view f, std::string_view v) {
  for (const auto& s : all) {
    if (s.friction_label == f && s.visibility_label == v) return s;
  }
  throw std::out_of_range("scenario not found");
}

std::vector<ScenarioStats> default_case_study() {
  const auto c = default_catalog();
  const auto set = generate_dataset(SamplerConfig{}, c);
  const auto assessed = assess_dataset(set, joint_probability(c), 0.0, 75.0);
  return scenario_statistics(set, assessed);
}

// 1. Marginal normalization reproduces the published table within 5e-4.
Check marginals() {
  Check ck;
  const auto c = default_catalog();
  const double f_expected[] = {0.0943, 0.1862, 0.2730, 0.4466};
  const double v_expected[] = {0.0262, 0.0706, 0.1890, 0.7142};
  const auto pf = normalize_marginals(c.friction_bands);
  const auto pv = normalize_marginals(c.visibility_bands);
  for (int i = 0; i < 4; ++i) {
    ck.require(std::abs(pf.probs[i].probability - f_expected[i]) <= 5e-4,
               pf.probs[i].label + "=" + num(pf.probs[i].probability));
    ck.require(std::abs(pv.probs[i].probability - v_expected[i]) <= 5e-4,
               pv.probs[i].label + "=" + num(pv.probs[i].probability));
  }
  return ck;
}

// 2. Probability scores, exact against a brute-force recomputation.
Check joint_scores() {
  Check ck;
  const auto t = joint_probability(default_catalog());
  struct Case { int f, v, expected; };
  const Case cases[] = {{0, 0, 1}, {3, 3, 5}, {0, 3, 4}, {1, 2, 3}, {2, 2, 4}};
  for (const auto& k : cases) {
    const int lib = t.at(oracle::kFriction[k.f], oracle::kVisibility[k.v]).probability_score;
    const int brute = oracle::probability_score(oracle::joint(k.f, k.v));
    const std::string name = std::string(oracle::kFriction[k.f]) + "x" +
                             std::string(oracle::kVisibility[k.v]);
    ck.require(lib == k.expected && brute == k.expected,
               name + " lib=" + std::to_string(lib) + " brute=" + std::to_string(brute));
  }
  return ck;
}

// 3. Severity pipeline spot checks at 75 mph, grade 0, within 0.1 mph.
Check severity_spots() {
  Check ck;
  struct Case { double mu, s, advisory; int severity; };
  const Case cases[] = {{0.8, 500, 52.1, 3}, {0.1, 150, 11.6, 5}};
  for (const auto& k : cases) {
    const auto p = speed_profile(k.mu, 0.0, k.s, 75.0);
    const int sev = score_severity(p.reduction_pct);
    const double flat = oracle::advisory(k.mu, k.s);
    ck.require(std::abs(p.v_advisory - flat) <= 0.1,
               "lib " + num(p.v_advisory) + " vs flat " + num(flat));
    ck.require(std::abs(p.v_advisory - k.advisory) <= 0.1,
               "advisory " + num(p.v_advisory) + " vs " + num(k.advisory));
    ck.require(sev == k.severity && oracle::severity_from_speed(flat) == k.severity,
               "severity " + std::to_string(sev));
  }
  return ck;
}

// 4. Case-study statistics at the default seed.
Check case_study() {
  Check ck;
  const auto start = std::chrono::steady_clock::now();
  const auto stats = default_case_study();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto& dc = find(stats, "Dry", "Clear");
  ck.require(dc.mean == 1.0 && dc.stddev == 0.0,
             "Dry x Clear mean " + num(dc.mean) + " sd " + num(dc.stddev));
  const auto& iv = find(stats, "Icy", "Very Dense Fog");
  ck.require(iv.mean == 25.0 && iv.stddev == 0.0,
             "Icy x VDF mean " + num(iv.mean) + " sd " + num(iv.stddev));
  const auto& dv = find(stats, "Dry", "Very Dense Fog");
  ck.require(std::abs(dv.mean - 20.0) <= 1.0, "Dry x VDF mean " + num(dv.mean));
  const auto& dd = find(stats, "Dry", "Dense Fog");
  ck.require(std::abs(dd.mean - 5.6) <= 1.0, "Dry x DF mean " + num(dd.mean));
  const auto& ir = find(stats, "Icy", "Rain/Snow");
  ck.require(std::abs(ir.mean - 8.4) <= 1.5, "Icy x R/S mean " + num(ir.mean));

  const std::pair<const char*, const char*> benign[] = {
      {"Dry", "Clear"}, {"Dry", "Rain/Snow"}, {"Wet", "Clear"}, {"Snow", "Clear"},
      {"Wet", "Rain/Snow"}, {"Icy", "Clear"}, {"Snow", "Rain/Snow"}};
  for (const auto& [f, v] : benign) {
    const auto& s = find(stats, f, v);
    ck.require(s.mean <= 5.0, std::string(f) + " x " + v + " mean " + num(s.mean));
  }
  ck.require(secs < 5.0, "took " + num(secs) + " s");
  if (ck.ok) {
    ck.detail = "DryxDF=" + num(dd.mean) + " IcyxRS=" + num(ir.mean) +
                " DryxVDF=" + num(dv.mean);
  }
  return ck;
}

// 5. Very Dense Fog scenarios take the top four places by mean.
Check ordering() {
  Check ck;
  const auto stats = default_case_study();
  ck.require(stats.size() == 16, "expected 16 scenarios");
  for (std::size_t i = 12; i < 16; ++i) {
    ck.require(stats[i].visibility_label == "Very Dense Fog",
               "rank " + std::to_string(i + 1) + " is " + stats[i].friction_label +
                   " x " + stats[i].visibility_label);
  }
  const double dry = find(stats, "Dry", "Very Dense Fog").mean;
  for (const char* f : {"Wet", "Snow", "Icy"}) {
    const double m = find(stats, f, "Very Dense Fog").mean;
    ck.require(m == 25.0, std::string(f) + " x VDF mean " + num(m));
    ck.require(dry < m, "Dry x VDF not strictly below " + std::string(f));
  }
  return ck;
}

// 6. Property suites.
Check properties() {
  Check ck;
  const auto start = std::chrono::steady_clock::now();

  // Probability bins: boundary values go to the lower score, next double up.
  const double p_edges[] = {0.010, 0.020, 0.050, 0.100};
  ck.require(score_probability(0.0) == 1 && score_probability(1.0) == 5,
             "probability endpoints");
  for (int i = 0; i < 4; ++i) {
    ck.require(score_probability(p_edges[i]) == i + 1 &&
                   score_probability(std::nextafter(p_edges[i], 2.0)) == i + 2,
               "probability edge " + num(p_edges[i]));
  }
  int prev = 1;
  for (int i = 0; i <= 1000000; ++i) {
    const int s = score_probability(i / 1e6);
    if (s < prev || s > prev + 1) ck.require(false, "probability gap at " + num(i / 1e6));
    prev = s;
  }

  // Severity bins: left-closed.
  const double s_edges[] = {100.0 / 15.0, 20.0, 100.0 / 3.0, 200.0 / 3.0};
  ck.require(score_severity(0.0) == 1 && score_severity(100.0) == 5,
             "severity endpoints");
  for (int i = 0; i < 4; ++i) {
    ck.require(score_severity(s_edges[i]) == i + 2 &&
                   score_severity(std::nextafter(s_edges[i], 0.0)) == i + 1,
               "severity edge " + num(s_edges[i]));
  }
  prev = 1;
  for (int i = 0; i <= 1000000; ++i) {
    const int s = score_severity(i / 1e4);
    if (s < prev || s > prev + 1) ck.require(false, "severity gap at " + num(i / 1e4));
    prev = s;
  }

  // Risk levels partition 1..25.
  const int level_hi[] = {5, 10, 15, 20, 25};
  int band = 0;
  for (int score = 1; score <= 25; ++score) {
    if (score > level_hi[band]) ++band;
    ck.require(static_cast<int>(risk_level(score)) == band,
               "risk level at " + std::to_string(score));
  }

  // Safe speed is monotone in sight distance and in mu + grade.
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> mu_d(0.01, 1.0);
  std::uniform_real_distribution<double> grade_d(-0.005, 0.1);
  std::uniform_real_distribution<double> sight_d(1.0, 6562.0);
  std::uniform_real_distribution<double> bump(1e-4, 0.3);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double mu = mu_d(rng), g = grade_d(rng), s = sight_d(rng);
    const double v = fhwa_safe_speed(mu, g, s);
    if (!(fhwa_safe_speed(mu, g, s * (1 + bump(rng))) > v)) ++violations;
    if (!(fhwa_safe_speed(mu + bump(rng), g, s) > v)) ++violations;
  }
  ck.require(violations == 0, std::to_string(violations) + " monotonicity violations");

  // Normalization is scale-invariant.
  std::uniform_real_distribution<double> rate_d(0.01, 100.0);
  std::uniform_real_distribution<double> exp_d(-8.0, 8.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto bands = default_catalog().friction_bands;
    for (auto& b : bands) b.crash_rate = rate_d(rng);
    auto scaled = bands;
    const double c = std::pow(10.0, exp_d(rng));
    for (auto& b : scaled) b.crash_rate *= c;
    const auto a = normalize_marginals(bands);
    const auto b = normalize_marginals(scaled);
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(a.probs[k].probability - b.probs[k].probability));
    }
  }
  ck.require(worst <= 1e-12, "scale invariance error " + num(worst));

  // All samples inside their bands.
  const auto c = default_catalog();
  const auto set = generate_dataset(SamplerConfig{}, c);
  std::size_t outside = 0;
  for (const auto& r : set.records) {
    const auto& sc = set.scenarios[r.scenario_id - 1];
    if (!c.friction_bands[sc.friction_index].contains(r.mu) ||
        !c.sampling_visibility_bands[sc.visibility_index].contains(r.sight_ft)) {
      ++outside;
    }
  }
  ck.require(set.records.size() == 1600 && outside == 0,
             std::to_string(outside) + " of " + std::to_string(set.records.size()) +
                 " samples out of bounds");

  // samples.csv audit: risk = p x s on every row.
  const auto dir = fs::temp_directory_path() / "hazard_risk_acceptance" / "audit";
  fs::remove_all(dir);
  cli::SimulateOptions opt;
  opt.out_dir = dir;
  std::ostringstream out, err;
  ck.require(cli::run_simulate(opt, out, err) == cli::kOk, "simulate failed: " + err.str());
  std::ifstream in(dir / "samples.csv");
  std::string line;
  std::getline(in, line);
  ck.require(line == report::kSamplesHeader, "samples.csv header mismatch");
  std::size_t rows = 0, bad = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    ++rows;
    if (f.size() != 14 || std::stoi(f[12]) != std::stoi(f[6]) * std::stoi(f[11])) ++bad;
  }
  ck.require(rows == 1600 && bad == 0,
             std::to_string(bad) + " bad rows of " + std::to_string(rows));

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ck.require(secs < 10.0, "took " + num(secs) + " s");
  return ck;
}

// 7. Two identical simulate runs produce byte-identical files.
Check determinism() {
  Check ck;
  const auto root = fs::temp_directory_path() / "hazard_risk_acceptance" / "determinism";
  fs::remove_all(root);
  for (const char* run : {"a", "b"}) {
    cli::SimulateOptions opt;
    opt.sampler.seed = 42;
    opt.sampler.samples_per_scenario = 100;
    opt.out_dir = root / run;
    std::ostringstream out, err;
    ck.require(cli::run_simulate(opt, out, err) == cli::kOk, "simulate failed");
  }
  const auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  for (const char* f : {"samples.csv", "scenario_stats.csv", "heatmap.csv",
                        "marginals.csv", "joint.csv", "manifest.json"}) {
    const auto a = read(root / "a" / f);
    ck.require(!a.empty() && a == read(root / "b" / f), std::string(f) + " differs");
  }
  return ck;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"AC1 marginal normalization matches published table (+-5e-4)", marginals},
      {"AC2 joint probability scores match brute force", joint_scores},
      {"AC3 severity pipeline spot checks (+-0.1 mph)", severity_spots},
      {"AC4 case-study scenario statistics", case_study},
      {"AC5 Very Dense Fog scenarios rank top four", ordering},
      {"AC6 property suites", properties},
      {"AC7 simulate output is byte-identical across runs", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check ck;
    try {
      ck = run();
    } catch (const std::exception& e) {
      ck.ok = false;
      ck.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s%s%s\n", ck.ok ? "PASS" : "FAIL", name.c_str(),
                ck.detail.empty() ? "" : " -- ", ck.detail.c_str());
    if (!ck.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
