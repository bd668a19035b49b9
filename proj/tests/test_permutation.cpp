#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "gemsample/permutation.hpp"
#include "gemsample/random.hpp"
#include "test_oracles.hpp"

using namespace gemsample;

namespace {
Permutation P(std::vector<Element> images) { return Permutation(std::move(images)); }
Permutation C(const char *text) { return parse_permutation(text); }
} // namespace

TEST_CASE("construction rejects non-bijections") {
  CHECK_THROWS_AS(P({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(P({0, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(P({}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::identity(0), std::invalid_argument);
  const std::vector<std::vector<Element>> overlapping{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(Permutation::from_cycles(3, overlapping), std::invalid_argument);
}

TEST_CASE("compose") {
  CHECK(compose(Permutation::identity(3), C("(0,1,2)")) == C("(0,1,2)"));
  CHECK(compose(C("(0,2,1)"), C("(0,2,1)")) == C("(0,1,2)"));
  CHECK(compose(C("(0,1)(2)"), C("(0,1)(2)")) == Permutation::identity(3));
  CHECK_THROWS_AS(compose(Permutation::identity(2), Permutation::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("composition is right-to-left") {
  // a = (0,1), b = (1,2): a(b(1)) = a(2) = 2, whereas b(a(1)) = b(0) = 0.
  auto ab = compose(C("(0,1)(2)"), C("(0)(1,2)"));
  CHECK(ab(1) == 2);
  CHECK(ab == C("(0,1,2)"));
}

TEST_CASE("inverse") {
  CHECK(inverse(Permutation::identity(5)) == Permutation::identity(5));
  CHECK(inverse(C("(0,1,2)")) == C("(0,2,1)"));
  CHECK(inverse(C("(0,1)(2)")) == C("(0,1)(2)"));
}

TEST_CASE("conjugate relabels") {
  auto a = C("(0,1)(2)(3)");
  auto p = C("(0,2)(1,3)");
  CHECK(conjugate(a, p) == compose(compose(p, a), inverse(p)));
  CHECK(conjugate(a, p) == C("(0)(1)(2,3)"));
}

TEST_CASE("cycles") {
  using V = std::vector<std::vector<Element>>;
  CHECK(cycles(Permutation::identity(3)) == V{{0}, {1}, {2}});
  CHECK(cycles(P({1, 2, 3, 0, 4, 5, 6})) == V{{0, 1, 2, 3}, {4}, {5}, {6}});
  CHECK(cycles(P({1, 0, 2})) == V{{0, 1}, {2}});
  CHECK(cycles(P({2, 0, 1})) == V{{0, 2, 1}});
  CHECK(cycle_count(P({1, 2, 3, 0, 4, 5, 6})) == 4);
}

TEST_CASE("cycle_structure") {
  using M = std::map<std::size_t, std::size_t>;
  CHECK(cycle_structure(C("(0,1)(2)")).counts() == M{{2, 1}, {1, 1}});
  CHECK(cycle_structure(Permutation::identity(6)).counts() == M{{1, 6}});
  CHECK(cycle_structure(C("(0,1,2,3)(4)(5)(6)")).counts() == M{{4, 1}, {1, 3}});
  CHECK(cycle_structure(C("(0,1,2,3)(4)(5)(6)")).degree() == 7);
}

TEST_CASE("string forms") {
  CHECK(to_string(P({1, 2, 3, 0, 4, 5, 6})) == "(0,1,2,3)(4)(5)(6)");
  CHECK(parse_permutation("1 0 2") == C("(0,1)(2)"));
  CHECK(parse_permutation("(0 1 2 3)(4)(5)(6)") == P({1, 2, 3, 0, 4, 5, 6}));
  CHECK(parse_permutation("(0,2)", 4) == P({2, 1, 0, 3}));
  CHECK_THROWS_AS(parse_permutation(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("(0,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("(0,1)x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("(0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("1 0 2", 4), std::invalid_argument);
}

TEST_CASE("property: inverse, cycles and string round trip on random permutations") {
  RandomStream rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng.below(40);
    auto a = sample_permutation(n, rng);
    CHECK(compose(a, inverse(a)).is_identity());
    CHECK(compose(inverse(a), a).is_identity());
    CHECK(parse_permutation(to_string(a)) == a);

    auto cyc = cycles(a);
    std::vector<bool> seen(n, false);
    std::size_t total = 0;
    for (const auto &c : cyc) {
      CHECK(c.front() == *std::min_element(c.begin(), c.end()));
      for (std::size_t k = 0; k < c.size(); ++k) {
        CHECK(a(c[k]) == c[(k + 1) % c.size()]);
        CHECK_FALSE(seen[c[k]]);
        seen[c[k]] = true;
      }
      total += c.size();
    }
    CHECK(total == n);
    for (std::size_t k = 1; k < cyc.size(); ++k)
      CHECK(cyc[k - 1].front() < cyc[k].front());
  }
}

TEST_CASE("sample_permutation") {
  RandomStream rng(1);
  CHECK(sample_permutation(1, rng) == Permutation::identity(1));

  SUBCASE("deterministic for a fixed seed") {
    RandomStream a(99), b(99);
    CHECK(sample_permutation(10, a) == sample_permutation(10, b));
    CHECK(sample_permutation(10, a) == sample_permutation(10, b));
  }

  SUBCASE("uniform over S_3") {
    std::map<Permutation, std::size_t> counts;
    const std::size_t draws = 60000;
    RandomStream r(7);
    for (std::size_t k = 0; k < draws; ++k)
      ++counts[sample_permutation(3, r)];
    REQUIRE(counts.size() == 6);
    const double p = 1.0 / 6.0;
    const double sd = std::sqrt(draws * p * (1 - p));
    std::vector<std::size_t> observed;
    for (auto [perm, c] : counts) {
      CHECK(std::abs(static_cast<double>(c) - draws * p) < 5 * sd);
      observed.push_back(c);
    }
    CHECK(oracle::chi_square_p_value(oracle::chi_square_uniform(observed), 5) > 1e-6);
  }
}

TEST_CASE("random stream") {
  RandomStream a(5, 0), b(5, 1), c(5, 0);
  CHECK(a() != b());
  RandomStream d(5, 0);
  CHECK(c() == d());
  for (int k = 0; k < 10000; ++k) {
    double u = a.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(7) < 7);
  }
}
