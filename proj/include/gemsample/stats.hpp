#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gemsample/num.hpp"
#include "gemsample/sampler.hpp"

namespace gemsample {

struct WeightedStats {
  std::size_t n = 0;
  std::size_t count = 0;
  std::uint64_t rejected_total = 0;
  Rational total_weight;
  std::map<std::size_t, Rational> genus_histogram;
  double mean_genus = 0.0;
  double std_genus = 0.0;
  /// std_genus / floor((n-1)/2); 0 when the maximal genus is 0.
  double std_genus_normalised = 0.0;
  /// Weighted mean of sym_cp * sym_swap - 1.
  double mean_nontrivial_symmetries = 0.0;
  /// Same, every record counted once.
  double mean_nontrivial_symmetries_unweighted = 0.0;
  double disconnected_proportion = 0.0;
  Rational max_single_weight;
  double max_single_weight_share = 0.0;
};

/// Commutative-monoid fold over records. All weight sums are exact, so the
/// result does not depend on record order or on how shards were merged.
class StatsAccumulator {
public:
  void add(const WeightedSampleRecord &rec);
  void merge(const StatsAccumulator &other);
  bool empty() const noexcept { return count_ == 0; }

  /// Throws std::invalid_argument when empty.
  WeightedStats finish() const;

private:
  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::uint64_t rejected_ = 0;
  std::map<std::size_t, RationalSum> histogram_;
  // sum of w * (sym - 1); records with sym == 1 contribute nothing
  RationalSum nontrivial_mass_;
  std::uint64_t nontrivial_count_ = 0;
  Rational max_weight_ = 0;
};

/// Throws std::invalid_argument on an empty input or mixed n.
WeightedStats aggregate(std::span<const WeightedSampleRecord> records);

/// (n - 1)/2 - (16.98 n - 110.61)^(1/4), the reference mean-genus curve.
double reference_mean_genus(double n);

/// Transforms of std_genus for the three growth hypotheses: exp(s) and
/// exp(exp(s)) are linear in n under logarithmic and doubly logarithmic
/// growth; log(asymptote - s) is linear under a finite asymptote.
struct StdHypothesisTransforms {
  double log_growth = 0.0;
  double double_log_growth = 0.0;
  double finite_asymptote = 0.0;
};
StdHypothesisTransforms std_hypothesis_transforms(double std_genus,
                                                  double asymptote = 1.5);

struct MeanGenusFit {
  double slope = 0.0;
  double intercept = 0.0;
  double exponent = 4.0;
  std::vector<double> residuals;
  double residual_norm = 0.0;
};

/// Least-squares line through ((n - 1)/2 - mean_genus)^exponent against n.
/// Needs at least two points with distinct n; throws std::invalid_argument
/// otherwise.
MeanGenusFit fit_mean_genus(std::span<const std::pair<double, double>> series,
                            double exponent = 4.0);

struct StabilityReport {
  std::size_t n = 0;
  double max_single_weight_share = 0.0;
  /// 1/(12n): no symmetry-free gem of maximal genus weighs less.
  Rational reference_bound;
  double reference_bound_share = 0.0;
  /// Exact weight of (n-cycle, its square), a maximal-genus gem; odd n only.
  std::optional<Rational> reference_max_genus_weight;
  bool distorted = false;
};

/// Flags batches where a single record carries at least `distortion_share`
/// of the total weight.
StabilityReport stability_report(std::span<const WeightedSampleRecord> records,
                                 double distortion_share = 0.4);

/// One row per n. Rationals are "num/den"; the histogram is
/// "g:num/den;g:num/den" with a float twin column.
std::string stats_csv_header();
std::string to_csv_row(const WeightedStats &s, double asymptote = 1.5);

/// Reads the (n, mean_genus) columns of a stats CSV.
std::vector<std::pair<double, double>> read_mean_genus_series(std::istream &in);

std::string to_json(const MeanGenusFit &fit);

} // namespace gemsample
