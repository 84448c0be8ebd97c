#pragma once

#include <stdexcept>
#include <string>

namespace equipart {

// Thrown when an enumeration or search exceeds its configured bound without
// reaching a conclusive answer.  Distinct from a proven negative result,
// which is reported as a structured value (nullopt) by the operation itself.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance files.  The message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Internal invariants that the algorithms guarantee by construction.  A
// failure here signals a bug, not a legal outcome.
inline void internal_check(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("internal invariant failed: " + msg);
}

}  // namespace detail
}  // namespace equipart
