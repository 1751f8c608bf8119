#pragma once

// Run configuration and subcommand drivers for the `dirloc` tool.
//
// Every driver writes its files under RunConfig::out_dir and returns the JSON
// document it wrote (or would print), so the same code path serves the tool
// and the tests.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirloc/dynamics.hpp"

namespace dirloc {

struct ProfileSpec {
  ProfileKind kind = ProfileKind::Gaussian;
  double sigma = 1.0;
  Vec3 v_target = Vec3::Zero();  // used by BoostedGaussian
};

struct GridSpec {
  int points = 128;
  double extent = 0.0;  // 0: fit to the state
  double r_max = 6.0;
  std::size_t r_count = 601;
};

struct RunConfig {
  ProfileSpec profile;
  LocalizationLabel label;  // label.n is ignored; see n_list
  std::vector<int> n_list{5, 7, 10};
  GridSpec grid;

  std::vector<double> times{0.0, 0.5, 1.0};
  double lightcone_r0 = 3.0;

  Vec3 rn_momentum{1.0, 0.0, 0.0};
  Observable rn_observable = Observable::Identity;

  Vec3 overlap_a{2.0, 0.0, 0.0};  // a' of the second state
  SpinLabel overlap_spin = SpinLabel::Up;

  bool figure1_oracle = false;  // compare r < 1 probability with the 3-D route
  std::map<std::string, double> tolerances;
  std::filesystem::path out_dir = "out";

  /// Throws ConfigError for an empty or non-positive n list, negative or
  /// non-finite tolerances, unknown tolerance names, or an invalid label/grid.
  void validate() const;
  MomentumProfile make_profile() const;
  MomentumState make_state(int n) const;
  CartesianGrid make_grid(const MomentumState& state) const;
  double tolerance(const std::string& name) const;
};

/// Tolerance names understood by `verify` with their default bounds.
const std::map<std::string, double>& default_tolerances();

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const RunConfig& cfg);

// Flag parsers; each throws ConfigError on malformed input.
std::vector<int> parse_n_list(const std::string& text);
GridSpec parse_grid(const std::string& text, GridSpec base);
std::pair<std::string, double> parse_tolerance(const std::string& text);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool at_least = false;  // pass when value >= bound instead of value <= bound
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

VerifyReport run_verification(const RunConfig& cfg);

nlohmann::json cmd_figure1(const RunConfig& cfg);
nlohmann::json cmd_verify(const RunConfig& cfg);  // has "passed"
nlohmann::json cmd_evolve(const RunConfig& cfg);
nlohmann::json cmd_rn(const RunConfig& cfg);
nlohmann::json cmd_moments(const RunConfig& cfg);
nlohmann::json cmd_overlap(const RunConfig& cfg);

/// Re-reads the CSVs written by cmd_figure1 and rebuilds its summary.
nlohmann::json figure1_summary_from_files(const RunConfig& cfg);

}  // namespace dirloc
