#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace remezlab {

/// One inequality trial. `fitted` is the smallest value of the family's
/// free constant for which this trial passes exactly.
struct BoundReport {
  std::string family;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = true;
  double gap_lhs = 0.0;
  double gap_rhs = 0.0;
  double fitted = 0.0;
  nlohmann::json extra = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const BoundReport& r);
void from_json(const nlohmann::json& j, BoundReport& r);

struct FittedConstant {
  std::string family;
  std::int64_t samples = 0;
  double value = 0.0;
  std::int64_t worst_trial = -1;
};

void to_json(nlohmann::json& j, const FittedConstant& c);

/// Per family, the maximum of `fitted` over its reports.
std::vector<FittedConstant> fit_reports(const std::vector<BoundReport>& reports);

/// One compact JSON object per line, in the given order.
std::string to_jsonl(const std::vector<BoundReport>& reports);
void write_jsonl(const std::filesystem::path& path, const std::vector<BoundReport>& reports);
std::vector<BoundReport> read_jsonl(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path, const std::vector<BoundReport>& reports);
void write_fitted_csv(const std::filesystem::path& path, const std::vector<FittedConstant>& fits);

}  // namespace remezlab
