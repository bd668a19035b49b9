#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gemsample/partition.hpp"
#include "gemsample/random.hpp"
#include "test_oracles.hpp"

using namespace gemsample;

TEST_CASE("partition invariants") {
  Partition p({1, 4, 1, 1});
  CHECK(p.parts() == std::vector<std::size_t>{4, 1, 1, 1});
  CHECK(p.n() == 7);
  CHECK_THROWS_AS(Partition({}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
}

TEST_CASE("string forms") {
  CHECK(to_string(Partition({4, 1, 1, 1})) == "4+1+1+1");
  CHECK(parse_partition("4+1+1+1") == Partition({4, 1, 1, 1}));
  CHECK(parse_partition("1+2") == Partition({2, 1}));
  CHECK_THROWS_AS(parse_partition(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("4++1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("4+x"), std::invalid_argument);
}

TEST_CASE("canonical_representative") {
  CHECK(to_string(canonical_representative(Partition({4, 1, 1, 1}))) ==
        "(0,1,2,3)(4)(5)(6)");
  CHECK(canonical_representative(Partition({1, 1, 1, 1})) ==
        Permutation::identity(4));
  CHECK(to_string(canonical_representative(Partition({2, 1}))) == "(0,1)(2)");
  CHECK(to_string(canonical_representative(Partition({3, 2, 2}))) ==
        "(0,1,2)(3,4)(5,6)");
}

TEST_CASE("property: cycle structure of the canonical representative is lambda") {
  for (std::size_t n = 1; n <= 12; ++n)
    for (const auto &lambda : partitions_of(n))
      CHECK(to_partition(cycle_structure(canonical_representative(lambda))) ==
            lambda);
}

TEST_CASE("centralizer_order") {
  CHECK(centralizer_order(Partition({2, 1})) == 2);
  CHECK(centralizer_order(Partition({3})) == 3);
  CHECK(centralizer_order(Partition({1, 1, 1})) == 6);
  CHECK(centralizer_order(Partition({2, 2, 1})) == 8);
  for (std::size_t n : {1u, 5u, 20u, 140u})
    CHECK(centralizer_order(Partition(std::vector<std::size_t>(n, 1))) ==
          factorial(n));
  // 140! has 242 digits; nothing may overflow.
  CHECK(centralizer_order(Partition(std::vector<std::size_t>(140, 1)))
            .get_str()
            .size() == 242);
}

TEST_CASE("conjugacy class sizes are n! / centralizer order (brute force)") {
  for (std::size_t n = 1; n <= 8; ++n) {
    std::map<std::vector<std::size_t>, std::size_t> class_size;
    for (const auto &img : oracle::all_images(n))
      ++class_size[oracle::cycle_lengths(img)];
    BigInt total = 0;
    for (const auto &lambda : partitions_of(n)) {
      BigInt expected = factorial(n) / centralizer_order(lambda);
      CHECK(BigInt(static_cast<unsigned long>(class_size[lambda.parts()])) ==
            expected);
      total += expected;
    }
    CHECK(total == factorial(n));
  }
}

TEST_CASE("partitions_of matches a recursive listing") {
  const std::size_t counts[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (std::size_t n = 1; n <= 12; ++n) {
    auto listed = partitions_of(n);
    CHECK(listed.size() == counts[n - 1]);
    auto ref = oracle::partitions(n);
    REQUIRE(ref.size() == listed.size());
    for (std::size_t k = 0; k < ref.size(); ++k)
      CHECK(listed[k].parts() == ref[k]); // both reverse-lexicographic
  }
}

TEST_CASE("partition_from_counts reproduces the n = 7 worked example") {
  const std::vector<std::size_t> counts{3, 0, 0, 1, 0, 0, 0};
  Partition lambda = partition_from_counts(counts);
  CHECK(to_string(lambda) == "4+1+1+1");
  CHECK(to_string(canonical_representative(lambda)) == "(0,1,2,3)(4)(5)(6)");
}

TEST_CASE("sample_partition") {
  RandomStream rng(3);
  for (int k = 0; k < 100; ++k)
    CHECK(sample_partition(1, rng) == Partition({1}));
  CHECK_THROWS_AS(sample_partition(0, rng), std::invalid_argument);

  SUBCASE("every draw is a partition of n") {
    for (std::size_t n : {2u, 17u, 60u, 140u})
      for (int k = 0; k < 50; ++k)
        CHECK(sample_partition(n, rng).n() == n);
  }

  SUBCASE("progress hook sees every attempt") {
    std::size_t last = 0;
    sample_partition(40, rng, [&](std::size_t attempt) {
      CHECK(attempt == last + 1);
      last = attempt;
    });
    CHECK(last >= 1);
  }

  SUBCASE("deterministic") {
    RandomStream a(11), b(11);
    for (int k = 0; k < 20; ++k)
      CHECK(sample_partition(30, a) == sample_partition(30, b));
  }

  SUBCASE("n = 5: all 7 partitions within 5 sigma of 1/7") {
    const std::size_t draws = 50000;
    std::map<Partition, std::size_t> counts;
    PartitionSampler sampler(5);
    for (std::size_t k = 0; k < draws; ++k)
      ++counts[sampler(rng)];
    REQUIRE(counts.size() == 7);
    const double p = 1.0 / 7.0;
    const double sd = std::sqrt(draws * p * (1 - p));
    for (auto [lambda, c] : counts)
      CHECK(std::abs(static_cast<double>(c) - draws * p) < 5 * sd);
  }

  SUBCASE("n <= 8: chi-square against the exhaustive list at 1e-6") {
    for (std::size_t n = 2; n <= 8; ++n) {
      PartitionSampler sampler(n);
      std::map<std::vector<std::size_t>, std::size_t> counts;
      for (const auto &parts : oracle::partitions(n))
        counts[parts] = 0;
      for (int k = 0; k < 100000; ++k)
        ++counts.at(sampler(rng).parts());
      std::vector<std::size_t> observed;
      for (auto [p, c] : counts)
        observed.push_back(c);
      double p_value = oracle::chi_square_p_value(
          oracle::chi_square_uniform(observed),
          static_cast<double>(observed.size() - 1));
      CAPTURE(n);
      CHECK(p_value > 1e-6);
    }
  }
}
