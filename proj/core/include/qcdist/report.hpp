#pragma once

#include <string>

#include "qcdist/bounds.hpp"

namespace qcdist {

/// JSON document: {summary:{total,failed,skipped,families:[...]}, failures:[...], skips:[...]}.
std::string report_json(const VerifyReport& report);

/// CSV, one row per check: name,K,t,lhs,rhs,margin,log_domain,pass.
std::string report_csv(const VerifyReport& report);

}  // namespace qcdist
