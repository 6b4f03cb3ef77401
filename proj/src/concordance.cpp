#include "remezlab/concordance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace remezlab {

const std::vector<std::string>& operation_registry() {
  static const std::vector<std::string> ops = {
      "poly.eval",
      "poly.cheb",
      "poly.sup_on_region",
      "poly.random_poly",
      "geometry.measure",
      "geometry.ray_section_lengths",
      "geometry.best_ray",
      "geometry.slice_geometry",
      "psh.make_fr_sample",
      "psh.mollify",
      "psh.extend_subharmonic",
      "psh.submeanvalue_test",
      "remez.bg_sharp_bound",
      "remez.simple_bound",
      "remez.verify_poly_remez",
      "remez.verify_main_inequality",
      "remez.verify_doubling",
      "remez.verify_l1_remez",
      "potential.relative_extremal",
      "potential.capacity",
      "potential.fekete",
      "potential.alexander_taylor_check",
      "potential.l_extremal_disk",
      "potential.polynomial_representation_check",
      "pvalent.phi_series",
      "pvalent.build_valency_table",
      "pvalent.check_phi_bound",
      "pvalent.valency_constant",
      "pvalent.verify_valent_doubling",
      "bmo.mean_oscillation",
      "bmo.bmo_norm",
      "bmo.log_integrability",
      "cli.run_suite",
      "cli.fit_constants",
      "harness-docs.check_concordance",
  };
  return ops;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConcordanceEntry> load_concordance(const std::filesystem::path& path) {
  std::vector<ConcordanceEntry> out;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 4) throw std::runtime_error("concordance: expected 4 fields per row");
    out.push_back({row[0], row[1], row[2], row[3]});
  }
  return out;
}

std::vector<AnchorSpec> load_anchors(const std::filesystem::path& path) {
  std::vector<AnchorSpec> out;
  for (const auto& row : read_csv(path)) {
    if (row.size() != 2) throw std::runtime_error("anchors: expected 2 fields per row");
    out.push_back({row[0], row[1] == "in"});
  }
  return out;
}

ConcordanceCheck check_concordance(const std::vector<ConcordanceEntry>& entries,
                                   const std::vector<AnchorSpec>& anchors,
                                   const std::vector<std::string>& registry) {
  ConcordanceCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.errors.push_back(std::move(msg));
  };
  std::map<std::string, std::vector<const ConcordanceEntry*>> by_anchor;
  for (const ConcordanceEntry& e : entries) by_anchor[e.anchor].push_back(&e);

  for (const AnchorSpec& a : anchors) {
    const auto it = by_anchor.find(a.anchor);
    if (it == by_anchor.end()) {
      fail("missing anchor: " + a.anchor);
      continue;
    }
    if (it->second.size() > 1) fail("duplicate anchor: " + a.anchor);
    const ConcordanceEntry& e = *it->second.front();
    if (!a.in_scope) {
      if (e.status != "out-of-scope") fail("out-of-scope anchor not labeled: " + a.anchor);
      continue;
    }
    if (e.status != "implemented" && e.status != "partial")
      fail("in-scope anchor has status '" + e.status + "': " + a.anchor);
    std::stringstream targets(e.target);
    std::string t;
    int count = 0;
    while (std::getline(targets, t, ';')) {
      ++count;
      if (std::find(registry.begin(), registry.end(), t) == registry.end())
        fail("dangling target '" + t + "' for anchor: " + a.anchor);
    }
    if (count == 0) fail("no target for anchor: " + a.anchor);
  }
  for (const auto& [anchor, _] : by_anchor) {
    const bool listed = std::any_of(anchors.begin(), anchors.end(),
                                    [&](const AnchorSpec& a) { return a.anchor == anchor; });
    if (!listed) fail("unknown anchor: " + anchor);
  }
  return check;
}

ConcordanceCheck check_concordance(const std::filesystem::path& docs_dir) {
  return check_concordance(load_concordance(docs_dir / "concordance.csv"),
                           load_anchors(docs_dir / "anchors.csv"));
}

}  // namespace remezlab
