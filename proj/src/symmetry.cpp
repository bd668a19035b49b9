#include "gemsample/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "gemsample/errors.hpp"

namespace gemsample {

ColourPermutation::ColourPermutation(unsigned s0, unsigned s1, unsigned s2) {
  if (s0 > 2 || s1 > 2 || s2 > 2 || s0 == s1 || s1 == s2 || s0 == s2)
    throw std::invalid_argument("not a permutation of three colours");
  source_ = {static_cast<std::uint8_t>(s0), static_cast<std::uint8_t>(s1),
             static_cast<std::uint8_t>(s2)};
}

ColourPermutation ColourPermutation::swap(unsigned a, unsigned b) {
  if (a < 1 || a > 3 || b < 1 || b > 3 || a == b)
    throw std::invalid_argument("colour swap needs two distinct colours 1..3");
  std::array<unsigned, 3> s{0, 1, 2};
  std::swap(s[a - 1], s[b - 1]);
  return ColourPermutation(s[0], s[1], s[2]);
}

std::array<ColourPermutation, 6> ColourPermutation::all() {
  return {ColourPermutation(0, 1, 2), ColourPermutation(1, 0, 2),
          ColourPermutation(0, 2, 1), ColourPermutation(2, 1, 0),
          ColourPermutation(1, 2, 0), ColourPermutation(2, 0, 1)};
}

bool ColourPermutation::is_identity() const noexcept {
  return source_[0] == 0 && source_[1] == 1 && source_[2] == 2;
}

std::string to_string(const ColourPermutation &tau) {
  std::string out;
  for (unsigned k = 0; k < 3; ++k)
    out += static_cast<char>('1' + tau.source(k));
  return out;
}

namespace {

constexpr Element kUnset = std::numeric_limits<Element>::max();

void require_connected(const StandardFormGem &gem, const char *what) {
  if (!is_connected(gem))
    throw DisconnectedGem(std::string(what) + " needs a connected gem: " +
                          to_string(gem));
}

// The relabelling that brings `b` into canonical-representative form.
Permutation standardizing_relabel(const Permutation &b) {
  auto cyc = cycles(b); // each starts at its minimum, sorted by minimum
  std::stable_sort(cyc.begin(), cyc.end(), [](const auto &x, const auto &y) {
    return x.size() > y.size();
  });
  std::vector<Element> images(b.degree());
  Element next = 0;
  for (const auto &c : cyc)
    for (Element x : c)
      images[x] = next++;
  return Permutation(std::move(images));
}

// Searches for node maps between two gems given as (mu, sigma) pairs on [n].
//
// A colour-preserving isomorphism either keeps the top row on top, in which
// case it is i -> p(i), i' -> p(i)' with p mu_a p^-1 = mu_b and
// p sigma_a p^-1 = sigma_b, or it swaps the rows (the point reflection), in
// which case p mu_a p^-1 = mu_b^-1 and p sigma_a p^-1 = sigma_b^-1. On a
// connected gem p is fixed by p(0), so there are 2n candidates.
class Extender {
public:
  Extender(const Permutation &mu_a, const Permutation &sigma_a,
           const Permutation &mu_b, const Permutation &sigma_b)
      : mu_a_(mu_a), sigma_a_(sigma_a), mu_b_(mu_b), sigma_b_(sigma_b),
        mu_b_inv_(inverse(mu_b)), sigma_b_inv_(inverse(sigma_b)),
        map_(mu_a.degree(), kUnset), used_(mu_a.degree(), 0) {}

  // Tries p(0) = target with or without the row swap.
  bool extends(Element target, bool reflect) {
    const Permutation &mu_t = reflect ? mu_b_inv_ : mu_b_;
    const Permutation &sigma_t = reflect ? sigma_b_inv_ : sigma_b_;
    std::fill(map_.begin(), map_.end(), kUnset);
    std::fill(used_.begin(), used_.end(), 0);
    queue_.clear();
    assign(0, target);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      Element x = queue_[head];
      Element px = map_[x];
      if (!link(mu_a_(x), mu_t(px)) || !link(sigma_a_(x), sigma_t(px)))
        return false;
    }
    return queue_.size() == map_.size();
  }

private:
  void assign(Element x, Element y) {
    map_[x] = y;
    used_[y] = 1;
    queue_.push_back(x);
  }

  // Requires p(x) = y.
  bool link(Element x, Element y) {
    if (map_[x] != kUnset)
      return map_[x] == y;
    if (used_[y])
      return false;
    assign(x, y);
    return true;
  }

  const Permutation &mu_a_, &sigma_a_, &mu_b_, &sigma_b_;
  Permutation mu_b_inv_, sigma_b_inv_;
  std::vector<Element> map_;
  std::vector<char> used_;
  std::vector<Element> queue_;
};

bool same_invariants(const StandardFormGem &a, const StandardFormGem &b) {
  return a.lambda() == b.lambda() &&
         cycle_structure(a.sigma()) == cycle_structure(b.sigma());
}

// Relabelled pair from a breadth-first walk started at `start`. `key` gets
// (mu(0), sigma(0), mu(1), sigma(1), ...) of the relabelled pair; the walk
// stops as soon as the key exceeds `best` (returns false in that case).
bool canonical_walk(const Permutation &mu, const Permutation &sigma,
                    Element start, std::vector<Element> &label,
                    std::vector<Element> &order, std::vector<Element> &key,
                    const std::vector<Element> *best) {
  const std::size_t n = mu.degree();
  std::fill(label.begin(), label.end(), kUnset);
  order.clear();
  key.clear();
  label[start] = 0;
  order.push_back(start);
  bool tied = best != nullptr;
  for (std::size_t k = 0; k < n; ++k) {
    Element x = order[k];
    for (Element y : {mu(x), sigma(x)}) {
      if (label[y] == kUnset) {
        label[y] = static_cast<Element>(order.size());
        order.push_back(y);
      }
      Element v = label[y];
      if (tied) {
        Element b = (*best)[key.size()];
        if (v > b)
          return false;
        if (v < b)
          tied = false;
      }
      key.push_back(v);
    }
  }
  return true;
}

} // namespace

ColourSwapImage colour_swap(const StandardFormGem &gem, ColourPermutation tau) {
  if (tau.is_identity())
    return {tau, gem};
  const std::array<const Permutation *, 3> roles{
      nullptr, &gem.mu(), &gem.sigma()};
  const Permutation id = Permutation::identity(gem.n());
  auto matching = [&](unsigned k) -> const Permutation & {
    unsigned s = tau.source(k);
    return s == 0 ? id : *roles[s];
  };
  Permutation a_inv = inverse(matching(0));
  Permutation b = compose(a_inv, matching(1));
  Permutation c = compose(a_inv, matching(2));
  Permutation relabel = standardizing_relabel(b);
  Partition lambda = to_partition(cycle_structure(b));
  StandardFormGem image(lambda, conjugate(c, relabel));
  if (conjugate(b, relabel) != image.mu())
    throw InvariantViolation("re-standardization did not produce mu_lambda");
  return {tau, std::move(image)};
}

std::size_t count_colour_preserving_symmetries(const StandardFormGem &gem) {
  require_connected(gem, "symmetry count");
  Extender ext(gem.mu(), gem.sigma(), gem.mu(), gem.sigma());
  std::size_t count = 0;
  for (Element j = 0; j < gem.n(); ++j)
    for (bool reflect : {false, true})
      count += ext.extends(j, reflect) ? 1 : 0;
  if (count == 0)
    throw InvariantViolation("identity not found among symmetries");
  return count;
}

bool colour_preserving_isomorphic(const StandardFormGem &a,
                                  const StandardFormGem &b) {
  require_connected(a, "isomorphism test");
  require_connected(b, "isomorphism test");
  if (!same_invariants(a, b))
    return false;
  Extender ext(a.mu(), a.sigma(), b.mu(), b.sigma());
  for (Element j = 0; j < a.n(); ++j)
    for (bool reflect : {false, true})
      if (ext.extends(j, reflect))
        return true;
  return false;
}

std::string colour_preserving_signature(const StandardFormGem &gem) {
  require_connected(gem, "signature");
  const std::size_t n = gem.n();
  std::vector<Element> label(n), order, key, best;
  const Permutation mu_inv = inverse(gem.mu());
  const Permutation sigma_inv = inverse(gem.sigma());
  for (bool reflect : {false, true}) {
    const Permutation &mu = reflect ? mu_inv : gem.mu();
    const Permutation &sigma = reflect ? sigma_inv : gem.sigma();
    for (Element s = 0; s < n; ++s) {
      if (!canonical_walk(mu, sigma, s, label, order, key,
                          best.empty() ? nullptr : &best))
        continue;
      if (best.empty() || key < best) {
        best.swap(key);
      }
    }
  }
  // best holds (mu'(k), sigma'(k)) interleaved; emit the two image rows.
  std::string out = std::to_string(n) + ":";
  for (std::size_t k = 0; k < n; ++k) {
    if (k)
      out += ',';
    out += std::to_string(best[2 * k]);
  }
  out += '|';
  for (std::size_t k = 0; k < n; ++k) {
    if (k)
      out += ',';
    out += std::to_string(best[2 * k + 1]);
  }
  return out;
}

std::string isomorphism_signature(const StandardFormGem &gem) {
  require_connected(gem, "isomorphism signature");
  std::string best;
  for (const auto &tau : ColourPermutation::all()) {
    auto sig = colour_preserving_signature(colour_swap(gem, tau).image);
    if (best.empty() || sig < best)
      best = std::move(sig);
  }
  return best;
}

WeightResult compute_weight(const StandardFormGem &gem) {
  require_connected(gem, "weight");
  WeightResult result;
  const std::size_t sym = count_colour_preserving_symmetries(gem);

  std::vector<StandardFormGem> reps;
  for (const auto &tau : ColourPermutation::all()) {
    StandardFormGem image = colour_swap(gem, tau).image;
    bool known = std::any_of(reps.begin(), reps.end(), [&](const auto &r) {
      return colour_preserving_isomorphic(r, image);
    });
    if (!known)
      reps.push_back(std::move(image));
  }
  const std::size_t k = reps.size();
  if (6 % k != 0)
    throw InvariantViolation("colour-swap classes do not divide 6 for " +
                             to_string(gem));

  BigInt centralizer_sum = 0;
  for (const auto &r : reps) {
    centralizer_sum += centralizer_order(r.lambda());
    result.class_partitions.push_back(r.lambda());
  }
  BigInt twice = 2 * centralizer_sum;
  if (!mpz_divisible_ui_p(twice.get_mpz_t(), sym))
    throw InvariantViolation("non-integral copy count for " + to_string(gem));
  BigInt copies = twice / static_cast<unsigned long>(sym);

  result.symmetries.colour_preserving_count = sym;
  result.symmetries.colour_swap_count = static_cast<unsigned>(6 / k);
  result.weight.value = Rational(BigInt(1), copies);
  result.weight.value.canonicalize();
  result.weight.log_value = -log_of(copies);
  return result;
}

} // namespace gemsample
