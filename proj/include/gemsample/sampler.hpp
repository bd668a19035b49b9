#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gemsample/gem.hpp"
#include "gemsample/partition.hpp"
#include "gemsample/random.hpp"
#include "gemsample/symmetry.hpp"

namespace gemsample {

/// One accepted draw of the sampler together with everything derived from it.
struct WeightedSampleRecord {
  std::size_t n = 0;
  Partition lambda;
  Permutation sigma;
  std::size_t genus = 0;
  std::size_t num_vertices = 0;
  std::size_t sym_colour_preserving = 0;
  unsigned sym_colour_swap = 0;
  Weight weight;
  /// Disconnected draws discarded before this one was accepted.
  std::uint64_t rejected_attempts = 0;
  std::size_t worker_id = 0;
  /// Position in the merged batch output.
  std::uint64_t draw_index = 0;
  std::optional<std::string> signature;

  StandardFormGem gem() const { return StandardFormGem(lambda, sigma); }
};

struct BatchConfig {
  std::size_t n = 0;
  std::size_t num_samples = 0;
  std::uint64_t master_seed = 0;
  std::size_t num_workers = 1;
  bool emit_signatures = false;
};

/// Throws std::invalid_argument on n, num_samples or num_workers of zero.
void validate(const BatchConfig &cfg);

/// Draws gems of a fixed n: partition, canonical representative and uniform
/// sigma until connected, then topology, symmetries and weight.
class GemSampler {
public:
  explicit GemSampler(std::size_t n, bool emit_signatures = false);

  WeightedSampleRecord draw(RandomStream &rng) const;

private:
  std::size_t n_;
  bool emit_signatures_;
  PartitionSampler partitions_;
};

WeightedSampleRecord draw_one(std::size_t n, RandomStream &rng,
                              bool emit_signature = false);

/// The record fields that follow from (lambda, sigma) alone. Throws
/// DisconnectedGem.
WeightedSampleRecord describe(const StandardFormGem &gem,
                              bool emit_signature = false);

/// Records per worker: num_samples / num_workers, the first
/// num_samples % num_workers workers taking one extra.
std::vector<std::size_t> worker_quotas(std::size_t num_samples,
                                       std::size_t num_workers);

/// Called from worker k's thread with its records in draw order. Different
/// workers call concurrently.
using WorkerSink =
    std::function<void(std::size_t worker, const WeightedSampleRecord &)>;

/// Runs the workers. Worker k draws from RandomStream(master_seed, k) and
/// produces its quota with draw indices offset by the quotas before it, so
/// the records depend only on (master_seed, num_workers, num_samples, n).
/// Rethrows the first worker exception after all threads have joined.
void run_workers(const BatchConfig &cfg, const WorkerSink &sink);

/// All records, merged in worker order (i.e. by draw_index).
std::vector<WeightedSampleRecord> run_batch(const BatchConfig &cfg);

} // namespace gemsample
