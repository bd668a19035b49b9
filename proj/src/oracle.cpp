#include "gemsample/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gemsample/sampler.hpp"
#include "gemsample/symmetry.hpp"

namespace gemsample {

EnumerationReport enumerate_space(std::size_t n, bool force) {
  if (n == 0)
    throw std::invalid_argument("enumerate: n must be >= 1");
  if (n > kMaxEnumerationN && !force)
    throw std::invalid_argument(
        "enumerate: n = " + std::to_string(n) + " means p(n) * n! pairs; " +
        "refusing above n = " + std::to_string(kMaxEnumerationN) +
        " without the override");

  EnumerationReport report;
  report.n = n;
  report.partitions = partitions_of(n);

  std::map<std::string, std::size_t> index_of;
  std::vector<Rational> member_weights; // parallel to cells

  std::vector<Element> images(n);
  for (std::size_t pi = 0; pi < report.partitions.size(); ++pi) {
    const Partition &lambda = report.partitions[pi];
    const Permutation mu = canonical_representative(lambda);
    std::iota(images.begin(), images.end(), Element{0});
    do {
      ++report.total_pairs;
      Permutation sigma(images);
      EnumeratedCell cell{pi, sigma, std::nullopt};
      Rational w = 0;
      if (is_connected(mu, sigma)) {
        ++report.connected_pairs;
        StandardFormGem gem(lambda, sigma);
        std::string sig = isomorphism_signature(gem);
        auto [it, inserted] = index_of.try_emplace(sig, report.classes.size());
        WeightResult wr = compute_weight(gem);
        if (inserted) {
          report.classes.push_back(EnumeratedClass{
              .signature = sig,
              .class_size = 0,
              .genus = genus(gem).genus,
              .weight = 0,
              .total_class_weight = 0,
              .sym_colour_preserving = wr.symmetries.colour_preserving_count,
              .sym_colour_swap = wr.symmetries.colour_swap_count,
              .representative = gem,
          });
        }
        auto &cls = report.classes[it->second];
        ++cls.class_size;
        cls.total_class_weight += wr.weight.value;
        if (genus(gem).genus != cls.genus)
          throw std::logic_error("genus differs inside one isomorphism class");
        cell.class_index = it->second;
        w = wr.weight.value;
      }
      report.cells.push_back(std::move(cell));
      member_weights.push_back(std::move(w));
    } while (std::next_permutation(images.begin(), images.end()));
  }

  for (auto &cls : report.classes)
    cls.weight = Rational(1, static_cast<unsigned long>(cls.class_size));
  for (std::size_t k = 0; k < report.cells.size(); ++k) {
    const auto &cell = report.cells[k];
    if (cell.class_index &&
        member_weights[k] != report.classes[*cell.class_index].weight)
      ++report.weight_mismatches;
  }
  return report;
}

const char *to_string(VerdictStatus s) {
  switch (s) {
  case VerdictStatus::pass:
    return "PASS";
  case VerdictStatus::fail:
    return "FAIL";
  case VerdictStatus::insufficient_power:
    return "INSUFFICIENT_POWER";
  }
  return "?";
}

Verification verify_sampler(std::size_t n, std::size_t num_draws,
                            std::uint64_t seed, std::size_t num_workers,
                            double z_limit, double min_expected_hits) {
  const EnumerationReport census = enumerate_space(n);
  std::map<std::string, std::size_t> index_of;
  for (std::size_t k = 0; k < census.classes.size(); ++k)
    index_of.emplace(census.classes[k].signature, k);

  const std::size_t num_classes = census.classes.size();
  std::vector<std::vector<Rational>> mass(
      num_workers, std::vector<Rational>(num_classes, Rational(0)));
  std::vector<std::size_t> unknown(num_workers, 0);

  BatchConfig cfg{.n = n,
                  .num_samples = num_draws,
                  .master_seed = seed,
                  .num_workers = num_workers,
                  .emit_signatures = true};
  run_workers(cfg, [&](std::size_t w, const WeightedSampleRecord &rec) {
    auto it = index_of.find(*rec.signature);
    if (it == index_of.end())
      ++unknown[w];
    else
      mass[w][it->second] += rec.weight.value;
  });

  Verification v;
  v.n = n;
  v.num_draws = num_draws;
  v.z_limit = z_limit;
  v.min_expected_hits = min_expected_hits;
  for (auto u : unknown)
    v.unknown_draws += u;

  const double c = static_cast<double>(census.connected_pairs);
  const double draws = static_cast<double>(num_draws);
  bool underpowered = false;
  for (std::size_t k = 0; k < num_classes; ++k) {
    const auto &cls = census.classes[k];
    ClassCheck check;
    check.signature = cls.signature;
    check.class_size = cls.class_size;
    check.observed_total = 0;
    for (std::size_t w = 0; w < num_workers; ++w)
      check.observed_total += mass[w][k];
    const double size = static_cast<double>(cls.class_size);
    check.expected_mass = 1.0 / c;
    check.observed_mass = to_double(check.observed_total) / draws;
    check.expected_hits = draws * size / c;
    const double variance = 1.0 / (c * size) - 1.0 / (c * c);
    const double se = std::sqrt(std::max(variance, 0.0) / draws);
    check.z = se > 0 ? (check.observed_mass - check.expected_mass) / se : 0.0;
    if (se == 0 && check.observed_mass != check.expected_mass)
      check.z = HUGE_VAL;
    v.chi_square += check.z * check.z;
    v.max_abs_z = std::max(v.max_abs_z, std::abs(check.z));
    underpowered = underpowered || check.expected_hits < min_expected_hits;
    v.classes.push_back(std::move(check));
  }

  if (v.unknown_draws > 0)
    v.status = VerdictStatus::fail;
  else if (underpowered)
    v.status = VerdictStatus::insufficient_power;
  else
    v.status = v.max_abs_z <= z_limit ? VerdictStatus::pass : VerdictStatus::fail;
  return v;
}

std::string to_json(const EnumerationReport &report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["total_pairs"] = report.total_pairs;
  j["connected_pairs"] = report.connected_pairs;
  j["weight_mismatches"] = report.weight_mismatches;
  auto &classes = j["classes"] = nlohmann::ordered_json::array();
  for (const auto &cls : report.classes) {
    nlohmann::ordered_json c;
    c["signature"] = cls.signature;
    c["class_size"] = cls.class_size;
    c["genus"] = cls.genus;
    c["weight"] = to_fraction_string(cls.weight);
    c["total_class_weight"] = to_fraction_string(cls.total_class_weight);
    c["sym_cp"] = cls.sym_colour_preserving;
    c["sym_swap"] = cls.sym_colour_swap;
    c["representative"] = to_string(cls.representative);
    classes.push_back(std::move(c));
  }
  return j.dump(2);
}

std::string to_json(const Verification &verdict) {
  nlohmann::ordered_json j;
  j["n"] = verdict.n;
  j["num_draws"] = verdict.num_draws;
  j["status"] = to_string(verdict.status);
  j["chi_square"] = verdict.chi_square;
  j["max_abs_z"] = verdict.max_abs_z;
  j["z_limit"] = verdict.z_limit;
  j["unknown_draws"] = verdict.unknown_draws;
  auto &classes = j["classes"] = nlohmann::ordered_json::array();
  for (const auto &c : verdict.classes) {
    nlohmann::ordered_json row;
    row["signature"] = c.signature;
    row["class_size"] = c.class_size;
    row["expected_mass"] = c.expected_mass;
    row["observed_mass"] = c.observed_mass;
    row["expected_hits"] = c.expected_hits;
    row["z"] = c.z;
    classes.push_back(std::move(row));
  }
  return j.dump(2);
}

std::string format_table(const EnumerationReport &report) {
  std::ostringstream out;
  out << "n=" << report.n << "  total_pairs=" << report.total_pairs
      << "  connected_pairs=" << report.connected_pairs
      << "  classes=" << report.classes.size()
      << "  weight_mismatches=" << report.weight_mismatches << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%5s %8s %6s %12s %7s %8s  %s\n", "class",
                "size", "genus", "weight", "sym_cp", "sym_swap",
                "representative");
  out << line;
  for (std::size_t k = 0; k < report.classes.size(); ++k) {
    const auto &c = report.classes[k];
    std::snprintf(line, sizeof line, "%5zu %8zu %6zu %12s %7zu %8u  ", k,
                  c.class_size, c.genus, to_fraction_string(c.weight).c_str(),
                  c.sym_colour_preserving, c.sym_colour_swap);
    out << line << to_string(c.representative) << "\n";
  }
  return out.str();
}

} // namespace gemsample
