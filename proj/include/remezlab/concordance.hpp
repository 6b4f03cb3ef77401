#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace remezlab {

struct ConcordanceEntry {
  std::string anchor;
  std::string quote;
  std::string target;  // module.operation names separated by ';', or '-'
  std::string status;  // implemented, partial or out-of-scope
};

struct AnchorSpec {
  std::string anchor;
  bool in_scope = true;
};

struct ConcordanceCheck {
  bool ok = true;
  std::vector<std::string> errors;
};

/// Every module.operation name the concordance may point at.
const std::vector<std::string>& operation_registry();

/// Minimal CSV reader: header row skipped, double-quoted fields may hold
/// commas and doubled quotes.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

std::vector<ConcordanceEntry> load_concordance(const std::filesystem::path& path);
std::vector<AnchorSpec> load_anchors(const std::filesystem::path& path);

/// Each listed anchor must appear exactly once. In-scope anchors need an
/// implemented or partial status and targets from `registry`; out-of-scope
/// anchors need the out-of-scope status. Errors name the offending anchor or
/// target.
ConcordanceCheck check_concordance(const std::vector<ConcordanceEntry>& entries,
                                   const std::vector<AnchorSpec>& anchors,
                                   const std::vector<std::string>& registry = operation_registry());

/// Checks docs/concordance.csv against docs/anchors.csv.
ConcordanceCheck check_concordance(const std::filesystem::path& docs_dir = REMEZLAB_DOCS_DIR);

}  // namespace remezlab
