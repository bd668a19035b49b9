#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace gemsample {

/// Seedable random stream (mt19937_64) with bit-exact derived draws.
///
/// The standard distributions are implementation-defined, so uniform reals
/// and bounded integers are derived here from the raw 64-bit output. That
/// keeps sample files identical across standard libraries.
class RandomStream {
public:
  using result_type = std::uint64_t;

  /// Stream `stream_id` of `master_seed`. Distinct ids give independent
  /// engines through std::seed_seq, whose mixing is fully specified.
  explicit RandomStream(std::uint64_t master_seed,
                        std::uint64_t stream_id = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open();

  /// Uniform on {0, ..., bound - 1}; bound > 0. Unbiased (rejection of the biased low range).
  std::uint64_t below(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
};

} // namespace gemsample
