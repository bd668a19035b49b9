#include "gemsample/sampler.hpp"

#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace gemsample {

void validate(const BatchConfig &cfg) {
  if (cfg.n == 0)
    throw std::invalid_argument("batch: n must be >= 1");
  if (cfg.num_samples == 0)
    throw std::invalid_argument("batch: num_samples must be >= 1");
  if (cfg.num_workers == 0)
    throw std::invalid_argument("batch: num_workers must be >= 1");
}

WeightedSampleRecord describe(const StandardFormGem &gem, bool emit_signature) {
  GemTopology topo = genus(gem);
  WeightResult w = compute_weight(gem);
  WeightedSampleRecord rec{
      .n = gem.n(),
      .lambda = gem.lambda(),
      .sigma = gem.sigma(),
      .genus = topo.genus,
      .num_vertices = topo.num_vertices,
      .sym_colour_preserving = w.symmetries.colour_preserving_count,
      .sym_colour_swap = w.symmetries.colour_swap_count,
      .weight = std::move(w.weight),
      .rejected_attempts = 0,
      .worker_id = 0,
      .draw_index = 0,
      .signature = std::nullopt,
  };
  if (emit_signature)
    rec.signature = isomorphism_signature(gem);
  return rec;
}

GemSampler::GemSampler(std::size_t n, bool emit_signatures)
    : n_(n), emit_signatures_(emit_signatures), partitions_(n) {}

WeightedSampleRecord GemSampler::draw(RandomStream &rng) const {
  for (std::uint64_t rejected = 0;; ++rejected) {
    Partition lambda = partitions_(rng);
    Permutation sigma = sample_permutation(n_, rng);
    if (!is_connected(canonical_representative(lambda), sigma))
      continue;
    WeightedSampleRecord rec = describe(
        StandardFormGem(std::move(lambda), std::move(sigma)), emit_signatures_);
    rec.rejected_attempts = rejected;
    return rec;
  }
}

WeightedSampleRecord draw_one(std::size_t n, RandomStream &rng,
                              bool emit_signature) {
  return GemSampler(n, emit_signature).draw(rng);
}

std::vector<std::size_t> worker_quotas(std::size_t num_samples,
                                       std::size_t num_workers) {
  if (num_workers == 0)
    throw std::invalid_argument("worker_quotas: num_workers must be >= 1");
  std::vector<std::size_t> quotas(num_workers, num_samples / num_workers);
  for (std::size_t k = 0; k < num_samples % num_workers; ++k)
    ++quotas[k];
  return quotas;
}

void run_workers(const BatchConfig &cfg, const WorkerSink &sink) {
  validate(cfg);
  const auto quotas = worker_quotas(cfg.num_samples, cfg.num_workers);
  const GemSampler sampler(cfg.n, cfg.emit_signatures);

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](std::size_t worker, std::uint64_t first_index) {
    try {
      RandomStream rng(cfg.master_seed, worker);
      for (std::size_t k = 0; k < quotas[worker]; ++k) {
        WeightedSampleRecord rec = sampler.draw(rng);
        rec.worker_id = worker;
        rec.draw_index = first_index + k;
        sink(worker, rec);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure)
        failure = std::current_exception();
    }
  };

  std::vector<std::thread> threads;
  std::uint64_t offset = 0;
  for (std::size_t w = 0; w < cfg.num_workers; ++w) {
    if (w + 1 == cfg.num_workers)
      work(w, offset); // the calling thread takes the last quota
    else
      threads.emplace_back(work, w, offset);
    offset += quotas[w];
  }
  for (auto &t : threads)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

std::vector<WeightedSampleRecord> run_batch(const BatchConfig &cfg) {
  validate(cfg);
  std::vector<std::vector<WeightedSampleRecord>> buffers(cfg.num_workers);
  run_workers(cfg, [&](std::size_t worker, const WeightedSampleRecord &rec) {
    buffers[worker].push_back(rec);
  });
  std::vector<WeightedSampleRecord> out;
  out.reserve(cfg.num_samples);
  for (auto &buf : buffers)
    for (auto &rec : buf)
      out.push_back(std::move(rec));
  return out;
}

} // namespace gemsample
