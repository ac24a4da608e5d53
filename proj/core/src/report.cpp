#include "qcdist/report.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace qcdist {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
  if (std::isnan(v)) {
    return "";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json check_json(const BoundCheck& c) {
  ordered_json j;
  j["name"] = c.name;
  j["paper_ref"] = c.paper_ref;
  if (!std::isnan(c.k)) j["K"] = c.k;
  if (!std::isnan(c.t)) j["t"] = c.t;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["margin"] = c.margin;
  j["log_domain"] = c.log_domain;
  j["strict"] = c.strict;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

std::string report_json(const VerifyReport& report) {
  ordered_json j;
  ordered_json summary;
  summary["total"] = report.total;
  summary["failed"] = report.failed;
  summary["skipped"] = static_cast<long>(report.skips.size());
  ordered_json fams = ordered_json::array();
  for (const FamilyStat& f : report.families) {
    ordered_json fj;
    fj["name"] = f.name;
    fj["paper_ref"] = f.paper_ref;
    fj["min_margin"] = f.min_margin;
    fj["points"] = f.points;
    fams.push_back(fj);
  }
  summary["families"] = fams;
  j["summary"] = summary;

  ordered_json failures = ordered_json::array();
  for (const BoundCheck& c : report.checks) {
    if (!c.pass) {
      failures.push_back(check_json(c));
    }
  }
  j["failures"] = failures;

  ordered_json skips = ordered_json::array();
  for (const SkipRecord& s : report.skips) {
    ordered_json sj;
    sj["family"] = s.family;
    if (!std::isnan(s.k)) sj["K"] = s.k;
    if (!std::isnan(s.t)) sj["t"] = s.t;
    sj["reason"] = s.reason;
    skips.push_back(sj);
  }
  j["skips"] = skips;
  return j.dump(2) + "\n";
}

std::string report_csv(const VerifyReport& report) {
  std::string out = "name,K,t,lhs,rhs,margin,log_domain,pass\n";
  for (const BoundCheck& c : report.checks) {
    out += c.name;
    out += ',';
    out += num(c.k);
    out += ',';
    out += num(c.t);
    out += ',';
    out += num(c.lhs);
    out += ',';
    out += num(c.rhs);
    out += ',';
    out += num(c.margin);
    out += ',';
    out += c.log_domain ? '1' : '0';
    out += ',';
    out += c.pass ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace qcdist
