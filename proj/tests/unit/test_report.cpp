#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "qcdist/bounds.hpp"
#include "qcdist/report.hpp"

using namespace qcdist;

namespace {

VerifyReport small_report() {
  GridSpec spec;
  spec.k_range = Range{0.5, 3.0, 4, false};  // includes a skipped K
  spec.t_range = Range{0.5, 2.0, 3, false};
  return verify_grid(spec, 1);
}

}  // namespace

TEST_CASE("json report matches the schema") {
  const VerifyReport report = small_report();
  const nlohmann::json j = nlohmann::json::parse(report_json(report));

  REQUIRE(j.contains("summary"));
  const auto& summary = j["summary"];
  REQUIRE(summary.contains("total"));
  REQUIRE(summary.contains("failed"));
  REQUIRE(summary.contains("families"));
  CHECK(summary["total"].get<long>() == report.total);
  CHECK(summary["failed"].get<long>() == report.failed);

  REQUIRE(summary["families"].is_array());
  for (const auto& f : summary["families"]) {
    REQUIRE(f.contains("name"));
    REQUIRE(f.contains("paper_ref"));
    REQUIRE(f.contains("min_margin"));
    REQUIRE(f.contains("points"));
  }

  REQUIRE(j.contains("failures"));
  REQUIRE(j["failures"].is_array());
  CHECK(j["failures"].size() == static_cast<std::size_t>(report.failed));

  // skip records carry their reason
  REQUIRE(j.contains("skips"));
  CHECK(j["skips"].size() == report.skips.size());
}

TEST_CASE("csv report has one row per check") {
  const VerifyReport report = small_report();
  const std::string csv = report_csv(report);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "name,K,t,lhs,rhs,margin,log_domain,pass");
  long rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    // eight columns
    long commas = 0;
    for (char ch : line) {
      if (ch == ',') ++commas;
    }
    CHECK(commas == 7);
  }
  CHECK(rows == report.total);
}

TEST_CASE("serialization is reproducible") {
  GridSpec spec;
  spec.k_range = Range{1.3, 9.0, 3, true};
  spec.t_range = Range{0.2, 5.0, 3, true};
  CHECK(report_json(verify_grid(spec, 1)) == report_json(verify_grid(spec, 3)));
  CHECK(report_csv(verify_grid(spec, 1)) == report_csv(verify_grid(spec, 3)));
}
