#include "gemsample/partition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gemsample/random.hpp"

namespace gemsample {

Partition::Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  if (parts_.empty())
    throw std::invalid_argument("partition must have at least one part");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  if (parts_.back() == 0)
    throw std::invalid_argument("partition parts must be positive");
  for (auto p : parts_)
    n_ += p;
}

CycleStructure Partition::cycle_structure() const {
  std::map<std::size_t, std::size_t> counts;
  for (auto p : parts_)
    ++counts[p];
  return CycleStructure(std::move(counts));
}

Partition to_partition(const CycleStructure &cs) {
  std::vector<std::size_t> parts;
  for (auto [len, mult] : cs.counts())
    parts.insert(parts.end(), mult, len);
  return Partition(std::move(parts));
}

Partition partition_from_counts(std::span<const std::size_t> counts) {
  std::vector<std::size_t> parts;
  for (std::size_t i = counts.size(); i > 0; --i)
    parts.insert(parts.end(), counts[i - 1], i);
  return Partition(std::move(parts));
}

Permutation canonical_representative(const Partition &lambda) {
  std::vector<Element> images(lambda.n());
  Element start = 0;
  for (auto len : lambda.parts()) {
    for (std::size_t k = 0; k < len; ++k)
      images[start + k] = static_cast<Element>(start + (k + 1) % len);
    start += static_cast<Element>(len);
  }
  return Permutation(std::move(images));
}

BigInt centralizer_order(const CycleStructure &cs) {
  BigInt order = 1;
  for (auto [len, mult] : cs.counts()) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), len, mult);
    order *= factorial(mult) * power;
  }
  return order;
}

BigInt centralizer_order(const Partition &lambda) {
  return centralizer_order(lambda.cycle_structure());
}

std::vector<Partition> partitions_of(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("partitions_of: n must be >= 1");
  std::vector<Partition> out;
  std::vector<std::size_t> parts{n};
  for (;;) {
    out.emplace_back(parts);
    // Next in reverse-lex order: strip trailing 1s, decrement the last
    // larger part, refill with copies of it.
    std::size_t ones = 0;
    while (!parts.empty() && parts.back() == 1) {
      parts.pop_back();
      ++ones;
    }
    if (parts.empty())
      break;
    std::size_t head = --parts.back();
    std::size_t rest = ones + 1;
    while (rest > head) {
      parts.push_back(head);
      rest -= head;
    }
    if (rest)
      parts.push_back(rest);
  }
  return out;
}

PartitionSampler::PartitionSampler(std::size_t n)
    : n_(n), zero_threshold_(n), inv_log_fail_(n) {
  if (n == 0)
    throw std::invalid_argument("sample_partition: n must be >= 1");
  const double c = std::numbers::pi / std::sqrt(6.0 * static_cast<double>(n));
  for (std::size_t i = 1; i <= n; ++i) {
    double rate = c * static_cast<double>(i);
    zero_threshold_[i - 1] = std::exp(-rate);
    inv_log_fail_[i - 1] = -1.0 / rate;
  }
}

std::size_t PartitionSampler::draw_counts(RandomStream &rng,
                                          std::vector<std::size_t> &counts) const {
  counts.assign(n_, 0);
  std::size_t total = 0;
  for (std::size_t i = 1; i <= n_; ++i) {
    double u = rng.uniform_open();
    // X_i = 0 exactly when log U > log(1 - q_i).
    if (u > zero_threshold_[i - 1])
      continue;
    double x = std::floor(std::log(u) * inv_log_fail_[i - 1]);
    if (x * static_cast<double>(i) > static_cast<double>(n_ - total))
      return n_ + 1;
    auto k = static_cast<std::size_t>(x);
    counts[i - 1] = k;
    total += k * i;
  }
  return total;
}

Partition PartitionSampler::operator()(RandomStream &rng,
                                       const PartitionProgress &progress) const {
  std::vector<std::size_t> counts;
  for (std::size_t attempt = 1;; ++attempt) {
    if (progress)
      progress(attempt);
    if (draw_counts(rng, counts) == n_)
      return partition_from_counts(counts);
  }
}

Partition sample_partition(std::size_t n, RandomStream &rng,
                           const PartitionProgress &progress) {
  return PartitionSampler(n)(rng, progress);
}

std::string to_string(const Partition &lambda) {
  std::string out;
  for (std::size_t k = 0; k < lambda.parts().size(); ++k) {
    if (k)
      out += '+';
    out += std::to_string(lambda.parts()[k]);
  }
  return out;
}

Partition parse_partition(std::string_view text) {
  std::vector<std::size_t> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('+', pos);
    if (end == std::string_view::npos)
      end = text.size();
    auto token = text.substr(pos, end - pos);
    while (!token.empty() && token.front() == ' ')
      token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ')
      token.remove_suffix(1);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      throw std::invalid_argument("malformed partition: '" + std::string(text) +
                                  "'");
    parts.push_back(v);
    pos = end + 1;
  }
  return Partition(std::move(parts));
}

} // namespace gemsample
