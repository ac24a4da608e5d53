#pragma once

#include <stdexcept>

namespace qcdist {

/// Argument outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result exceeds binary64 range; callers are pointed at the log-domain API.
class OverflowInfo : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Malformed grid or sweep description.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qcdist
