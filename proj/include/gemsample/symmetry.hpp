#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gemsample/gem.hpp"
#include "gemsample/num.hpp"

namespace gemsample {

/// A permutation of the three colour roles. New colour k (0-based) takes the
/// matching that old colour source(k) had.
class ColourPermutation {
public:
  constexpr ColourPermutation() = default;
  /// Throws std::invalid_argument unless {s0, s1, s2} = {0, 1, 2}.
  ColourPermutation(unsigned s0, unsigned s1, unsigned s2);

  static ColourPermutation identity() { return {}; }
  /// Exchanges colours a and b (1-based, as colours are named).
  static ColourPermutation swap(unsigned a, unsigned b);
  /// All six, identity first.
  static std::array<ColourPermutation, 6> all();

  unsigned source(unsigned k) const noexcept { return source_[k]; }
  bool is_identity() const noexcept;

  friend bool operator==(const ColourPermutation &,
                         const ColourPermutation &) = default;

private:
  std::array<std::uint8_t, 3> source_{0, 1, 2};
};

/// 1-based sources, e.g. "213" for the 1<->2 swap.
std::string to_string(const ColourPermutation &tau);

struct ColourSwapImage {
  ColourPermutation tau;
  StandardFormGem image;
};

/// Applies the colour permutation and brings the result back into standard
/// form.
///
/// With matchings c1 = id, c2 = mu, c3 = sigma permuted into (a, b, c), the
/// bottom row is relabelled by a^-1 to give (id, a^-1 o b, a^-1 o c). The
/// pair is then conjugated by the relabelling that walks the cycles of
/// a^-1 o b by decreasing length (ties: smaller minimum first), each from
/// its minimum, which turns colour two into its canonical representative.
ColourSwapImage colour_swap(const StandardFormGem &gem, ColourPermutation tau);

/// Number of colour-preserving automorphisms of a connected gem, identity
/// included. Each of the 2n candidate images of top node 0 is extended along
/// the arcs until it either closes up or hits a contradiction.
/// Throws DisconnectedGem.
std::size_t count_colour_preserving_symmetries(const StandardFormGem &gem);

/// Whether a colour-preserving graph isomorphism maps a onto b. Both must be
/// connected.
bool colour_preserving_isomorphic(const StandardFormGem &a,
                                  const StandardFormGem &b);

/// Canonical string of the colour-preserving isomorphism class: the minimal
/// relabelling over all 2n base-node choices. O(n^2).
std::string colour_preserving_signature(const StandardFormGem &gem);

/// Minimum of colour_preserving_signature over all six colour-swap images;
/// equal exactly for isomorphic gems.
std::string isomorphism_signature(const StandardFormGem &gem);

struct SymmetryReport {
  std::size_t colour_preserving_count = 0;
  unsigned colour_swap_count = 0;
};

struct Weight {
  Rational value;
  double log_value = 0.0;
};

struct WeightResult {
  Weight weight;
  SymmetryReport symmetries;
  /// Colour-two partitions of the distinct colour-preserving classes among
  /// the six colour-swap images, in order of first appearance.
  std::vector<Partition> class_partitions;
};

/// 1/w = (2 / |Sym|) * sum_j |c_{lambda'_j}| over the distinct classes j.
/// The result counts the standard-form pairs isomorphic to gem.
/// Throws DisconnectedGem.
WeightResult compute_weight(const StandardFormGem &gem);

} // namespace gemsample
