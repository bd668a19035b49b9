#pragma once

#include <stdexcept>
#include <string>

namespace gemsample {

/// The operation needs a connected gem (transitive <mu, sigma>).
class DisconnectedGem : public std::invalid_argument {
public:
  explicit DisconnectedGem(const std::string &what)
      : std::invalid_argument(what) {}
};

/// A mathematical invariant failed. Always a bug; callers should not recover.
class InvariantViolation : public std::logic_error {
public:
  explicit InvariantViolation(const std::string &what)
      : std::logic_error(what) {}
};

} // namespace gemsample
