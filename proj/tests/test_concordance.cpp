#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "remezlab/concordance.hpp"

using namespace remezlab;
namespace fs = std::filesystem;

namespace {

const fs::path kDocs = REMEZLAB_DOCS_DIR;

bool mentions(const ConcordanceCheck& c, const std::string& needle) {
  for (const std::string& e : c.errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("shipped concordance is complete") {
  const ConcordanceCheck c = check_concordance();
  for (const std::string& e : c.errors) INFO(e);
  CHECK(c.ok);
  CHECK(c.errors.empty());
  const auto entries = load_concordance(kDocs / "concordance.csv");
  const auto anchors = load_anchors(kDocs / "anchors.csv");
  CHECK(entries.size() == anchors.size());
  for (const ConcordanceEntry& e : entries) CHECK(!e.quote.empty());
}

TEST_CASE("dropping an entry names its anchor") {
  auto entries = load_concordance(kDocs / "concordance.csv");
  const auto anchors = load_anchors(kDocs / "anchors.csv");
  REQUIRE(!entries.empty());
  const std::string dropped = entries.front().anchor;
  entries.erase(entries.begin());
  const ConcordanceCheck c = check_concordance(entries, anchors);
  CHECK_FALSE(c.ok);
  CHECK(mentions(c, dropped));
}

TEST_CASE("dangling targets and duplicates are reported") {
  auto entries = load_concordance(kDocs / "concordance.csv");
  const auto anchors = load_anchors(kDocs / "anchors.csv");
  auto it = std::find_if(entries.begin(), entries.end(),
                         [](const ConcordanceEntry& e) { return e.status == "implemented"; });
  REQUIRE(it != entries.end());
  it->target = "remez.no_such_operation";
  ConcordanceCheck c = check_concordance(entries, anchors);
  CHECK_FALSE(c.ok);
  CHECK(mentions(c, "remez.no_such_operation"));

  entries = load_concordance(kDocs / "concordance.csv");
  entries.push_back(entries.front());
  c = check_concordance(entries, anchors);
  CHECK_FALSE(c.ok);
  CHECK(mentions(c, entries.front().anchor));
}

TEST_CASE("status must match scope") {
  auto entries = load_concordance(kDocs / "concordance.csv");
  const auto anchors = load_anchors(kDocs / "anchors.csv");
  auto out = std::find_if(entries.begin(), entries.end(),
                          [](const ConcordanceEntry& e) { return e.status == "out-of-scope"; });
  REQUIRE(out != entries.end());
  out->status = "implemented";
  const ConcordanceCheck c = check_concordance(entries, anchors);
  CHECK_FALSE(c.ok);
  CHECK(mentions(c, out->anchor));
}

TEST_CASE("registered targets exist") {
  const auto& reg = operation_registry();
  CHECK(std::find(reg.begin(), reg.end(), "remez.verify_poly_remez") != reg.end());
  for (const std::string& op : reg) CHECK(op.find('.') != std::string::npos);
}

TEST_CASE("csv reader handles quoting") {
  const fs::path p = fs::temp_directory_path() / "remezlab-test-quoting.csv";
  std::ofstream(p) << "a,b\n\"x, y\",\"say \"\"hi\"\"\"\n";
  const auto rows = read_csv(p);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "x, y");
  CHECK(rows[0][1] == "say \"hi\"");
}

TEST_CASE("code carries no document anchors") {
  const std::regex anchor(R"((Eq\.|Theorem|Lemma|Prop\.|Definition|Section|Remark|Corollary)\s*\(?\d)");
  const fs::path root = REMEZLAB_SOURCE_DIR;
  for (const char* sub : {"src", "include", "tools"})
    for (const auto& e : fs::recursive_directory_iterator(root / sub)) {
      if (!e.is_regular_file()) continue;
      std::ifstream is(e.path());
      std::stringstream ss;
      ss << is.rdbuf();
      INFO(e.path().string());
      CHECK_FALSE(std::regex_search(ss.str(), anchor));
    }
}
