#pragma once

#include <stdexcept>
#include <string>

namespace polbeta {

/// Two independent computations of the same quantity disagreed, or an
/// internal invariant failed. Always a bug; never swallowed.
class OracleMismatch : public std::logic_error {
 public:
  explicit OracleMismatch(const std::string& what) : std::logic_error(what) {}
};

}  // namespace polbeta
