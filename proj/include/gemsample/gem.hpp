#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "gemsample/partition.hpp"
#include "gemsample/permutation.hpp"

namespace gemsample {

/// A graph-encoded orientable surface with 2n triangles in standard form.
///
/// The gem has top nodes 0..n-1 and bottom nodes 0'..(n-1)'. Colour one joins
/// i to i', colour two joins i to mu(i)' and colour three joins i to
/// sigma(i)'. In standard form mu is the canonical representative of lambda.
class StandardFormGem {
public:
  /// Throws std::invalid_argument if the degrees disagree.
  StandardFormGem(Partition lambda, Permutation sigma);

  std::size_t n() const noexcept { return lambda_.n(); }
  const Partition &lambda() const noexcept { return lambda_; }
  const Permutation &mu() const noexcept { return mu_; }
  const Permutation &sigma() const noexcept { return sigma_; }

  friend bool operator==(const StandardFormGem &a, const StandardFormGem &b) {
    return a.lambda_ == b.lambda_ && a.sigma_ == b.sigma_;
  }

private:
  Partition lambda_;
  Permutation mu_;
  Permutation sigma_;
};

struct GemTopology {
  std::size_t num_vertices = 0;
  long euler_characteristic = 0;
  std::size_t genus = 0;

  friend bool operator==(const GemTopology &, const GemTopology &) = default;
};

/// Whether <mu, sigma> acts transitively on [n], i.e. whether the gem graph
/// is connected (colour-one arcs tie i to i').
bool is_connected(const Permutation &mu, const Permutation &sigma);
inline bool is_connected(const StandardFormGem &gem) {
  return is_connected(gem.mu(), gem.sigma());
}

/// #cycles(mu) + #cycles(sigma) + #cycles(mu^-1 o sigma).
std::size_t num_vertices(const Permutation &mu, const Permutation &sigma);

/// floor((n - 1) / 2).
std::size_t max_genus(std::size_t n);

/// v from num_vertices, chi = v - n, g = (2 - chi) / 2. Throws
/// DisconnectedGem for disconnected input.
GemTopology genus(const StandardFormGem &gem);

/// "lambda=2+1; sigma=(0,2)(1)".
std::string to_string(const StandardFormGem &gem);
StandardFormGem parse_gem(std::string_view text);

} // namespace gemsample
