#include "remezlab/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace remezlab {

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = {{"family", r.family}, {"trial", r.trial},     {"seed", r.seed},
       {"lhs", r.lhs},       {"rhs", r.rhs},         {"bound", r.bound},
       {"margin", r.margin}, {"pass", r.pass},       {"gap_lhs", r.gap_lhs},
       {"gap_rhs", r.gap_rhs}, {"fitted", r.fitted}, {"extra", r.extra}};
}

void from_json(const nlohmann::json& j, BoundReport& r) {
  j.at("family").get_to(r.family);
  j.at("trial").get_to(r.trial);
  j.at("seed").get_to(r.seed);
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  j.at("bound").get_to(r.bound);
  j.at("margin").get_to(r.margin);
  j.at("pass").get_to(r.pass);
  j.at("gap_lhs").get_to(r.gap_lhs);
  j.at("gap_rhs").get_to(r.gap_rhs);
  j.at("fitted").get_to(r.fitted);
  r.extra = j.value("extra", nlohmann::json::object());
}

void to_json(nlohmann::json& j, const FittedConstant& c) {
  j = {{"family", c.family}, {"samples", c.samples}, {"value", c.value},
       {"worst_trial", c.worst_trial}};
}

std::vector<FittedConstant> fit_reports(const std::vector<BoundReport>& reports) {
  std::map<std::string, FittedConstant> by_family;
  for (const BoundReport& r : reports) {
    auto [it, fresh] = by_family.try_emplace(r.family, FittedConstant{r.family, 0, r.fitted, r.trial});
    FittedConstant& c = it->second;
    ++c.samples;
    if (!fresh && r.fitted > c.value) {
      c.value = r.fitted;
      c.worst_trial = r.trial;
    }
  }
  std::vector<FittedConstant> out;
  for (auto& [_, c] : by_family) out.push_back(c);
  return out;
}

std::string to_jsonl(const std::vector<BoundReport>& reports) {
  std::string out;
  for (const BoundReport& r : reports) {
    out += nlohmann::json(r).dump();
    out += '\n';
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<BoundReport>& reports) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_jsonl(reports);
}

std::vector<BoundReport> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<BoundReport> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(nlohmann::json::parse(line).get<BoundReport>());
  return out;
}

namespace {

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<BoundReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "family,trial,seed,lhs,rhs,bound,margin,pass,fitted\n";
  for (const BoundReport& r : reports)
    out << r.family << ',' << r.trial << ',' << r.seed << ',' << num(r.lhs) << ',' << num(r.rhs)
        << ',' << num(r.bound) << ',' << num(r.margin) << ',' << (r.pass ? 1 : 0) << ','
        << num(r.fitted) << '\n';
}

void write_fitted_csv(const std::filesystem::path& path, const std::vector<FittedConstant>& fits) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "family,samples,value,worst_trial\n";
  for (const FittedConstant& c : fits)
    out << c.family << ',' << c.samples << ',' << num(c.value) << ',' << c.worst_trial << '\n';
}

}  // namespace remezlab
