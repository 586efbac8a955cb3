#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ergoquench {

/// A numerical invariant (trace, Hermiticity, positivity, nonnegative ergotropy)
/// failed beyond tolerance. `where()` names the module that detected it.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace ergoquench
