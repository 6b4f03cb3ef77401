#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "remezlab/report.hpp"

namespace remezlab {

/// Zero-valued n, kmax and trials select the suite's default.
struct RunConfig {
  std::string suite;
  int n = 0;
  int kmax = 0;
  int trials = 0;
  std::uint64_t seed = 1;
  int grid = 513;
  int jobs = 1;
  double tau_v = 1e-2;
  double tau_at = 0.05;
  double tau_smv = 1e-6;
  double a = 2.0;
  double r = 2.0;
  std::filesystem::path out;

  bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);

/// Key-value document: a [run] section, then an optional section named
/// after the suite whose keys override [run].
RunConfig load_config(const std::filesystem::path& path);
std::string config_to_ini(const RunConfig& c);
void save_config(const std::filesystem::path& path, const RunConfig& c);

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Effective values after suite defaults are applied.
RunConfig resolve_defaults(RunConfig c);

std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial);

struct SuiteResult {
  std::vector<BoundReport> reports;  // ordered by trial id, then emission order
  int violations = 0;
  bool converged = true;

  int exit_status() const { return violations == 0 && converged ? 0 : 1; }
};

/// Runs a registered suite; throws std::invalid_argument for unknown names.
SuiteResult run_suite(const RunConfig& cfg);

/// Writes <out>/<suite>.jsonl, <suite>_summary.csv and <suite>_manifest.json.
void write_suite_outputs(const RunConfig& cfg, const SuiteResult& result);

/// Per family, the minimal constant over every report in `files`; an empty
/// selector keeps all families. Throws on an empty report set.
std::vector<FittedConstant> fit_constants(const std::vector<std::filesystem::path>& files,
                                          const std::string& family = {});

/// Command-line entry point; returns the process exit status.
int run_cli(const std::vector<std::string>& args);

}  // namespace remezlab
