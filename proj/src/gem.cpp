#include "gemsample/gem.hpp"

#include <stdexcept>
#include <vector>

#include "gemsample/errors.hpp"

namespace gemsample {

StandardFormGem::StandardFormGem(Partition lambda, Permutation sigma)
    : lambda_(std::move(lambda)), mu_(canonical_representative(lambda_)),
      sigma_(std::move(sigma)) {
  if (sigma_.degree() != lambda_.n())
    throw std::invalid_argument("gem: sigma degree " +
                                std::to_string(sigma_.degree()) +
                                " does not match partition of " +
                                std::to_string(lambda_.n()));
}

bool is_connected(const Permutation &mu, const Permutation &sigma) {
  if (mu.degree() != sigma.degree())
    throw std::invalid_argument("is_connected: degree mismatch");
  const std::size_t n = mu.degree();
  std::vector<bool> seen(n, false);
  std::vector<Element> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Element x = stack.back();
    stack.pop_back();
    for (Element y : {mu(x), sigma(x)}) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

std::size_t num_vertices(const Permutation &mu, const Permutation &sigma) {
  return cycle_count(mu) + cycle_count(sigma) +
         cycle_count(compose(inverse(mu), sigma));
}

std::size_t max_genus(std::size_t n) { return n == 0 ? 0 : (n - 1) / 2; }

GemTopology genus(const StandardFormGem &gem) {
  if (!is_connected(gem))
    throw DisconnectedGem("genus is undefined for a disconnected gem: " +
                          to_string(gem));
  GemTopology topo;
  topo.num_vertices = num_vertices(gem.mu(), gem.sigma());
  topo.euler_characteristic =
      static_cast<long>(topo.num_vertices) - static_cast<long>(gem.n());
  long twice_genus = 2 - topo.euler_characteristic;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw InvariantViolation("non-integral genus for " + to_string(gem));
  topo.genus = static_cast<std::size_t>(twice_genus / 2);
  if (topo.genus > max_genus(gem.n()))
    throw InvariantViolation("genus exceeds floor((n-1)/2) for " +
                             to_string(gem));
  return topo;
}

std::string to_string(const StandardFormGem &gem) {
  return "lambda=" + to_string(gem.lambda()) + "; sigma=" +
         to_string(gem.sigma());
}

StandardFormGem parse_gem(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw std::invalid_argument("gem text needs 'lambda=...; sigma=...'");
  auto field = [&](std::string_view part, std::string_view key) {
    auto start = part.find_first_not_of(' ');
    if (start == std::string_view::npos || part.substr(start, key.size()) != key)
      throw std::invalid_argument("gem text: expected '" + std::string(key) +
                                  "'");
    return part.substr(start + key.size());
  };
  Partition lambda = parse_partition(field(text.substr(0, semi), "lambda="));
  Permutation sigma =
      parse_permutation(field(text.substr(semi + 1), "sigma="), lambda.n());
  return StandardFormGem(std::move(lambda), std::move(sigma));
}

} // namespace gemsample
