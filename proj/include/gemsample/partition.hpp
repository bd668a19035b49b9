#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gemsample/num.hpp"
#include "gemsample/permutation.hpp"

namespace gemsample {

class RandomStream;

/// Weakly decreasing positive parts; names a conjugacy class of S_n.
class Partition {
public:
  /// Sorts `parts` into weakly decreasing order; rejects empty input and
  /// zero parts.
  explicit Partition(std::vector<std::size_t> parts);

  const std::vector<std::size_t> &parts() const noexcept { return parts_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return parts_.size(); }
  CycleStructure cycle_structure() const;

  friend bool operator==(const Partition &, const Partition &) = default;
  friend auto operator<=>(const Partition &a, const Partition &b) {
    return a.parts_ <=> b.parts_;
  }

private:
  std::vector<std::size_t> parts_;
  std::size_t n_ = 0;
};

Partition to_partition(const CycleStructure &cs);

/// Builds the partition with counts[i-1] parts equal to i.
Partition partition_from_counts(std::span<const std::size_t> counts);

/// (0,...,l1-1)(l1,...,l1+l2-1)... with parts in weakly decreasing order.
Permutation canonical_representative(const Partition &lambda);

/// |c_sigma| = prod a_i! * p_i^a_i, exactly.
BigInt centralizer_order(const CycleStructure &cs);
BigInt centralizer_order(const Partition &lambda);

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ...
std::vector<Partition> partitions_of(std::size_t n);

/// Called with the 1-based attempt number before every rejection-loop draw.
using PartitionProgress = std::function<void(std::size_t)>;

/// Uniform partitions of a fixed n by Fristedt's conditioning method.
///
/// Part multiplicities X_i are independent geometric variables with success
/// probability q_i = 1 - exp(-pi i / sqrt(6n)) and support {0, 1, ...}; a
/// draw is accepted iff sum i X_i == n. Each X_i uses one uniform U via
/// inverse CDF, X_i = floor(log U / log(1 - q_i)).
class PartitionSampler {
public:
  explicit PartitionSampler(std::size_t n);

  std::size_t n() const noexcept { return n_; }

  Partition operator()(RandomStream &rng,
                       const PartitionProgress &progress = {}) const;

  /// One round of geometric draws, written into counts (size n). Returns the
  /// weighted sum, or a value > n if the draw overshot and was cut short.
  std::size_t draw_counts(RandomStream &rng,
                          std::vector<std::size_t> &counts) const;

private:
  std::size_t n_;
  // exp(-c i) = 1 - q_i: U above this gives X_i = 0 without a log.
  std::vector<double> zero_threshold_;
  // 1 / log(1 - q_i) = -1 / (c i).
  std::vector<double> inv_log_fail_;
};

Partition sample_partition(std::size_t n, RandomStream &rng,
                           const PartitionProgress &progress = {});

/// "4+1+1+1".
std::string to_string(const Partition &lambda);
Partition parse_partition(std::string_view text);

} // namespace gemsample
