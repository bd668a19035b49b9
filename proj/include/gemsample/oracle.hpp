#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gemsample/gem.hpp"
#include "gemsample/num.hpp"

namespace gemsample {

/// Largest n enumerate_space accepts without the override flag.
inline constexpr std::size_t kMaxEnumerationN = 7;

struct EnumeratedClass {
  std::string signature;
  std::size_t class_size = 0;
  std::size_t genus = 0;
  /// 1 / class_size.
  Rational weight;
  /// Sum of compute_weight over the members; 1 when the weights are right.
  Rational total_class_weight;
  std::size_t sym_colour_preserving = 0;
  unsigned sym_colour_swap = 0;
  /// First member in enumeration order.
  StandardFormGem representative;
};

/// One standard-form pair of the raw sample space.
struct EnumeratedCell {
  std::size_t partition_index = 0;
  Permutation sigma;
  /// Index into EnumerationReport::classes; empty for disconnected pairs.
  std::optional<std::size_t> class_index;
};

struct EnumerationReport {
  std::size_t n = 0;
  std::uint64_t total_pairs = 0;
  std::uint64_t connected_pairs = 0;
  std::vector<Partition> partitions;
  /// In order of first appearance.
  std::vector<EnumeratedClass> classes;
  /// Partitions in reverse-lexicographic order, sigma in lexicographic
  /// one-line order.
  std::vector<EnumeratedCell> cells;
  /// Members whose computed weight differs from 1 / class_size.
  std::size_t weight_mismatches = 0;
};

/// Exhaustive pass over all (lambda, sigma): drops disconnected pairs, groups
/// the rest by isomorphism_signature and checks every computed weight against
/// the class size. Throws std::invalid_argument if n == 0 or if
/// n > kMaxEnumerationN and !force.
EnumerationReport enumerate_space(std::size_t n, bool force = false);

enum class VerdictStatus { pass, fail, insufficient_power };
const char *to_string(VerdictStatus s);

struct ClassCheck {
  std::string signature;
  std::size_t class_size = 0;
  /// Expected weighted mass per accepted draw: 1 / connected_pairs.
  double expected_mass = 0.0;
  double observed_mass = 0.0;
  Rational observed_total;
  /// Accepted draws expected to land in the class.
  double expected_hits = 0.0;
  double z = 0.0;
};

struct Verification {
  std::size_t n = 0;
  std::size_t num_draws = 0;
  VerdictStatus status = VerdictStatus::fail;
  std::vector<ClassCheck> classes;
  double chi_square = 0.0;
  double max_abs_z = 0.0;
  /// Draws whose signature matched no enumerated class.
  std::size_t unknown_draws = 0;
  double z_limit = 5.0;
  double min_expected_hits = 30.0;
};

/// Samples num_draws gems and compares each class's weighted mass with the
/// uniform prediction.
///
/// With C connected pairs and class K, Y = w * [draw in K] has mean 1/C and
/// second moment |K| (1/|K|)^2 / C = 1/(C |K|), so the z-score uses the exact
/// standard error. A class expected to receive fewer than min_expected_hits
/// draws makes the verdict insufficient_power rather than pass/fail.
Verification verify_sampler(std::size_t n, std::size_t num_draws,
                            std::uint64_t seed, std::size_t num_workers = 1,
                            double z_limit = 5.0,
                            double min_expected_hits = 30.0);

/// JSON exports. Rationals are "num/den" strings.
std::string to_json(const EnumerationReport &report);
std::string to_json(const Verification &verdict);

/// Fixed-width class table for terminals.
std::string format_table(const EnumerationReport &report);

} // namespace gemsample
