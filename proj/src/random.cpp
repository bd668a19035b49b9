#include "gemsample/random.hpp"

#include <array>

namespace gemsample {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t master_seed,
                              std::uint64_t stream_id) {
  std::array<std::uint32_t, 5> words{
      static_cast<std::uint32_t>(master_seed),
      static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream_id),
      static_cast<std::uint32_t>(stream_id >> 32),
      0x67656d73u, // domain tag
  };
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

} // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : engine_(seeded_engine(master_seed, stream_id)) {}

double RandomStream::uniform_open() {
  // (k + 0.5) / 2^53 with k uniform on [0, 2^53) never hits 0 or 1.
  std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  // Reject the low 2^64 mod bound outputs so every residue is equally likely.
  const std::uint64_t threshold = -bound % bound;
  for (;;) {
    std::uint64_t x = engine_();
    if (x >= threshold)
      return x % bound;
  }
}

} // namespace gemsample
