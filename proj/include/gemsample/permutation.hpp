#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gemsample {

class RandomStream;

using Element = std::uint32_t;

/// A bijection on [n] = {0, ..., n-1}, stored as its image sequence.
class Permutation {
public:
  /// Validates that `images` is a bijection on [images.size()]; throws
  /// std::invalid_argument otherwise.
  explicit Permutation(std::vector<Element> images);

  static Permutation identity(std::size_t n);

  /// Builds a permutation of degree n from disjoint cycles. Elements not
  /// mentioned are fixed points.
  static Permutation from_cycles(std::size_t n,
                                 std::span<const std::vector<Element>> cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Element operator()(Element i) const noexcept { return images_[i]; }
  std::span<const Element> images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
  struct Unchecked {};
  Permutation(std::vector<Element> images, Unchecked) noexcept
      : images_(std::move(images)) {}

  std::vector<Element> images_;

  friend Permutation compose(const Permutation &, const Permutation &);
  friend Permutation inverse(const Permutation &);
  friend Permutation conjugate(const Permutation &, const Permutation &);
  friend Permutation sample_permutation(std::size_t, RandomStream &);
};

/// Multiset of cycle lengths: length -> multiplicity.
class CycleStructure {
public:
  CycleStructure() = default;
  explicit CycleStructure(std::map<std::size_t, std::size_t> counts);

  const std::map<std::size_t, std::size_t> &counts() const noexcept {
    return counts_;
  }
  std::size_t degree() const noexcept;
  std::size_t num_cycles() const noexcept;

  friend bool operator==(const CycleStructure &,
                         const CycleStructure &) = default;

private:
  std::map<std::size_t, std::size_t> counts_;
};

/// (a o b)(i) = a(b(i)). Throws std::invalid_argument on degree mismatch.
Permutation compose(const Permutation &a, const Permutation &b);
Permutation inverse(const Permutation &a);

/// p o a o p^-1, i.e. a relabelled by p.
Permutation conjugate(const Permutation &a, const Permutation &p);

/// Cycles starting at their minimum, ordered by minimum.
std::vector<std::vector<Element>> cycles(const Permutation &a);
std::size_t cycle_count(const Permutation &a);
CycleStructure cycle_structure(const Permutation &a);

/// Uniform over S_n (Fisher-Yates).
Permutation sample_permutation(std::size_t n, RandomStream &rng);

/// Cycle notation, e.g. "(0,1,2)(3)". Fixed points are written out.
std::string to_string(const Permutation &a);

/// Accepts cycle notation ("(0,1)(2)", separators ',' or blanks) or the
/// one-line form ("1 0 2"). For cycle notation the degree defaults to
/// max element + 1. Throws std::invalid_argument on malformed input.
Permutation parse_permutation(std::string_view text,
                              std::optional<std::size_t> degree = {});

} // namespace gemsample
