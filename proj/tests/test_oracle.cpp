#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include <json.hpp>

#include "gemsample/oracle.hpp"
#include "test_oracles.hpp"

using namespace gemsample;

TEST_CASE("n = 1") {
  auto r = enumerate_space(1);
  CHECK(r.total_pairs == 1);
  CHECK(r.connected_pairs == 1);
  REQUIRE(r.classes.size() == 1);
  CHECK(r.classes[0].genus == 0);
  CHECK(r.classes[0].weight == Rational(1));
}

TEST_CASE("the n = 3 sample space") {
  auto r = enumerate_space(3);
  CHECK(r.total_pairs == 18);
  CHECK(r.connected_pairs == 12);
  CHECK(r.weight_mismatches == 0);
  REQUIRE(r.classes.size() == 3);

  std::map<std::string, std::size_t> label_of;
  for (std::size_t k = 0; k < r.classes.size(); ++k) {
    const auto &c = r.classes[k];
    CHECK(c.total_class_weight == Rational(1));
    if (c.genus == 1) {
      CHECK(c.class_size == 1);
      label_of["T0"] = k;
    } else if (c.class_size == 4) {
      label_of["S0"] = k;
    } else {
      CHECK(c.class_size == 7);
      label_of["S1"] = k;
    }
  }
  REQUIRE(label_of.size() == 3);
  CHECK(r.classes[label_of["S0"]].weight == Rational(1, 4));
  CHECK(r.classes[label_of["S1"]].weight == Rational(1, 7));
  CHECK(r.classes[label_of["T0"]].weight == Rational(1));

  // rows by colour-two partition, columns by sigma
  const std::vector<std::string> columns{"(0)(1)(2)", "(0,1)(2)", "(0,2)(1)",
                                         "(0)(1,2)",  "(0,1,2)",  "(0,2,1)"};
  const std::map<std::string, std::vector<std::string>> table{
      {"1+1+1", {"", "", "", "", "S0", "S0"}},
      {"2+1", {"", "", "S1", "S1", "S1", "S1"}},
      {"3", {"S0", "S1", "S1", "S1", "S0", "T0"}},
  };
  REQUIRE(r.cells.size() == 18);
  std::size_t checked = 0;
  for (const auto &cell : r.cells) {
    auto row = to_string(r.partitions.at(cell.partition_index));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (!(parse_permutation(columns[c], 3) == cell.sigma))
        continue;
      const auto &want = table.at(row)[c];
      if (want.empty()) {
        CHECK_FALSE(cell.class_index.has_value());
      } else {
        REQUIRE(cell.class_index.has_value());
        CHECK(*cell.class_index == label_of[want]);
      }
      ++checked;
    }
  }
  CHECK(checked == 18);
}

TEST_CASE("every class has total weight one up to n = 7") {
  for (std::size_t n = 1; n <= 7; ++n) {
    CAPTURE(n);
    auto r = enumerate_space(n);
    CHECK(r.weight_mismatches == 0);
    std::uint64_t members = 0;
    for (const auto &c : r.classes) {
      CHECK(c.total_class_weight == Rational(1));
      members += c.class_size;
    }
    CHECK(members == r.connected_pairs);
  }
}

TEST_CASE("class sizes match the union-find orbits") {
  for (std::size_t n = 1; n <= 6; ++n) {
    CAPTURE(n);
    oracle::PairOrbits orbits(n);
    auto r = enumerate_space(n);
    std::map<std::size_t, std::size_t> orbit_size;
    std::map<std::size_t, std::set<std::size_t>> classes_of_orbit;
    for (const auto &cell : r.cells) {
      if (!cell.class_index)
        continue;
      auto mu = canonical_representative(r.partitions[cell.partition_index]);
      auto root = orbits.find(orbits.index(
          {mu.images().begin(), mu.images().end()},
          {cell.sigma.images().begin(), cell.sigma.images().end()}));
      ++orbit_size[root];
      classes_of_orbit[root].insert(*cell.class_index);
    }
    CHECK(orbit_size.size() == r.classes.size());
    for (const auto &[root, ks] : classes_of_orbit) {
      REQUIRE(ks.size() == 1);
      CHECK(r.classes[*ks.begin()].class_size == orbit_size[root]);
    }
  }
}

TEST_CASE("enumeration guard and determinism") {
  CHECK_THROWS_AS(enumerate_space(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_space(8), std::invalid_argument);
  auto a = enumerate_space(5), b = enumerate_space(5);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t k = 0; k < a.classes.size(); ++k)
    CHECK(a.classes[k].signature == b.classes[k].signature);
  CHECK(to_json(a) == to_json(b));
  auto j = nlohmann::json::parse(to_json(a));
  CHECK(j["n"] == 5);
  CHECK(j["classes"].size() == a.classes.size());
  CHECK(format_table(enumerate_space(3)).find("1/7") != std::string::npos);
}

TEST_CASE("verification verdicts") {
  auto low = verify_sampler(3, 100, 1);
  CHECK(low.status == VerdictStatus::insufficient_power);
  CHECK(std::string(to_string(low.status)) == "INSUFFICIENT_POWER");

  for (std::size_t workers : {1u, 3u}) {
    auto v = verify_sampler(3, 30000, 17, workers);
    CHECK(v.status == VerdictStatus::pass);
    CHECK(v.unknown_draws == 0);
    CHECK(v.max_abs_z <= 5.0);
    REQUIRE(v.classes.size() == 3);
    for (const auto &c : v.classes) {
      CHECK(c.expected_mass == doctest::Approx(1.0 / 12));
      CHECK(c.expected_hits >= 30.0);
    }
    auto j = nlohmann::json::parse(to_json(v));
    CHECK(j["status"] == "PASS");
  }
  auto v = verify_sampler(4, 20000, 5, 2);
  CHECK(v.status == VerdictStatus::pass);
}
