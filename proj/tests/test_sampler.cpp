#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gemsample/sampler.hpp"

using namespace gemsample;

namespace {
bool same_record(const WeightedSampleRecord &a, const WeightedSampleRecord &b) {
  return a.n == b.n && a.lambda == b.lambda && a.sigma == b.sigma &&
         a.genus == b.genus && a.num_vertices == b.num_vertices &&
         a.sym_colour_preserving == b.sym_colour_preserving &&
         a.sym_colour_swap == b.sym_colour_swap &&
         a.weight.value == b.weight.value &&
         a.rejected_attempts == b.rejected_attempts &&
         a.worker_id == b.worker_id && a.draw_index == b.draw_index &&
         a.signature == b.signature;
}
} // namespace

TEST_CASE("n = 1 has a single gem") {
  RandomStream rng(1);
  for (int k = 0; k < 20; ++k) {
    auto rec = draw_one(1, rng);
    CHECK(rec.lambda == Partition({1}));
    CHECK(rec.sigma.is_identity());
    CHECK(rec.genus == 0);
    CHECK(rec.num_vertices == 3);
    CHECK(rec.weight.value == Rational(1));
    CHECK(rec.rejected_attempts == 0);
  }
}

TEST_CASE("records agree with a recomputation from (lambda, sigma)") {
  RandomStream rng(2);
  for (std::size_t n : {2u, 3u, 7u, 20u, 50u}) {
    GemSampler sampler(n, true);
    for (int k = 0; k < 40; ++k) {
      auto rec = sampler.draw(rng);
      CHECK(rec.n == n);
      CHECK(rec.sigma.degree() == n);
      CHECK(is_connected(rec.gem()));
      auto again = describe(rec.gem(), true);
      CHECK(again.genus == rec.genus);
      CHECK(again.num_vertices == rec.num_vertices);
      CHECK(again.sym_colour_preserving == rec.sym_colour_preserving);
      CHECK(again.sym_colour_swap == rec.sym_colour_swap);
      CHECK(again.weight.value == rec.weight.value);
      CHECK(again.signature == rec.signature);
      CHECK(rec.weight.log_value ==
            doctest::Approx(std::log(to_double(rec.weight.value))));
      CHECK(rec.genus == (2 - (static_cast<long>(rec.num_vertices) -
                               static_cast<long>(n))) / 2);
    }
  }
  CHECK_FALSE(GemSampler(5).draw(rng).signature.has_value());
}

TEST_CASE("batch configuration") {
  CHECK_THROWS_AS(validate(BatchConfig{0, 10, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(BatchConfig{3, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(BatchConfig{3, 10, 1, 0}), std::invalid_argument);
  CHECK(worker_quotas(10, 3) == std::vector<std::size_t>{4, 3, 3});
  CHECK(worker_quotas(2, 4) == std::vector<std::size_t>{1, 1, 0, 0});
  CHECK(worker_quotas(8, 1) == std::vector<std::size_t>{8});
}

TEST_CASE("batches are reproducible and ordered") {
  for (std::size_t workers : {1u, 3u, 8u}) {
    BatchConfig cfg{6, 101, 424242, workers, true};
    auto a = run_batch(cfg);
    auto b = run_batch(cfg);
    REQUIRE(a.size() == 101);
    REQUIRE(b.size() == 101);
    auto quotas = worker_quotas(101, workers);
    std::size_t idx = 0;
    for (std::size_t w = 0; w < workers; ++w)
      for (std::size_t k = 0; k < quotas[w]; ++k, ++idx) {
        CHECK(same_record(a[idx], b[idx]));
        CHECK(a[idx].draw_index == idx);
        CHECK(a[idx].worker_id == w);
        CHECK(a[idx].signature.has_value());
      }
  }
  auto x = run_batch(BatchConfig{6, 50, 1});
  auto y = run_batch(BatchConfig{6, 50, 2});
  bool differ = false;
  for (std::size_t k = 0; k < 50; ++k)
    differ = differ || !(x[k].sigma == y[k].sigma);
  CHECK(differ);
}

TEST_CASE("worker exceptions propagate") {
  BatchConfig cfg{4, 20, 3, 4};
  CHECK_THROWS_AS(run_workers(cfg,
                              [](std::size_t w, const WeightedSampleRecord &) {
                                if (w == 2)
                                  throw std::runtime_error("boom");
                              }),
                  std::runtime_error);
}

TEST_CASE("rejection rate at n = 3 is one third") {
  // lambda is uniform over the three partitions; 6 of the 18 cells
  // (4 under 1+1+1, 2 under 2+1) are disconnected.
  const std::size_t draws = 60000;
  auto recs = run_batch(BatchConfig{3, draws, 99});
  std::uint64_t rejected = 0;
  for (const auto &r : recs)
    rejected += r.rejected_attempts;
  const double attempts = static_cast<double>(rejected + draws);
  const double frac = static_cast<double>(rejected) / attempts;
  const double p = 1.0 / 3.0;
  CHECK(std::abs(frac - p) <= 5 * std::sqrt(p * (1 - p) / attempts));
}
