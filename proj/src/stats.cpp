#include "gemsample/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

#include <json.hpp>

#include "gemsample/record_io.hpp"

namespace gemsample {

void StatsAccumulator::add(const WeightedSampleRecord &rec) {
  if (count_ == 0)
    n_ = rec.n;
  else if (rec.n != n_)
    throw std::invalid_argument("aggregate: records mix n = " +
                                std::to_string(n_) + " and n = " +
                                std::to_string(rec.n));
  ++count_;
  rejected_ += rec.rejected_attempts;
  histogram_[rec.genus].add(rec.weight.value);
  const std::size_t sym = rec.sym_colour_preserving * rec.sym_colour_swap;
  if (sym > 1) {
    nontrivial_mass_.add(rec.weight.value * static_cast<unsigned long>(sym - 1));
    nontrivial_count_ += sym - 1;
  }
  if (rec.weight.value > max_weight_)
    max_weight_ = rec.weight.value;
}

void StatsAccumulator::merge(const StatsAccumulator &other) {
  if (other.count_ == 0)
    return;
  if (count_ != 0 && other.n_ != n_)
    throw std::invalid_argument("aggregate: cannot merge different n");
  if (count_ == 0)
    n_ = other.n_;
  count_ += other.count_;
  rejected_ += other.rejected_;
  for (const auto &[g, mass] : other.histogram_)
    histogram_[g].merge(mass);
  nontrivial_mass_.merge(other.nontrivial_mass_);
  nontrivial_count_ += other.nontrivial_count_;
  if (other.max_weight_ > max_weight_)
    max_weight_ = other.max_weight_;
}

WeightedStats StatsAccumulator::finish() const {
  if (count_ == 0)
    throw std::invalid_argument("aggregate: no records");
  WeightedStats s;
  s.n = n_;
  s.count = count_;
  s.rejected_total = rejected_;
  for (const auto &[g, sum] : histogram_)
    s.genus_histogram[g] = sum.total();
  s.total_weight = 0;
  for (const auto &[g, mass] : s.genus_histogram)
    s.total_weight += mass;
  // moments on the normalised histogram
  std::map<std::size_t, double> share;
  double mean = 0;
  for (const auto &[g, mass] : s.genus_histogram) {
    share[g] = ratio(mass, s.total_weight);
    mean += share[g] * static_cast<double>(g);
  }
  double var = 0;
  for (const auto &[g, p] : share)
    var += p * (static_cast<double>(g) - mean) * (static_cast<double>(g) - mean);
  s.mean_genus = mean;
  s.std_genus = std::sqrt(var);
  const std::size_t gmax = max_genus(n_);
  s.std_genus_normalised = gmax ? s.std_genus / static_cast<double>(gmax) : 0.0;
  s.mean_nontrivial_symmetries = ratio(nontrivial_mass_.total(), s.total_weight);
  s.mean_nontrivial_symmetries_unweighted =
      static_cast<double>(nontrivial_count_) / static_cast<double>(count_);
  s.disconnected_proportion =
      static_cast<double>(rejected_) /
      (static_cast<double>(rejected_) + static_cast<double>(count_));
  s.max_single_weight = max_weight_;
  s.max_single_weight_share = ratio(max_weight_, s.total_weight);
  return s;
}

WeightedStats aggregate(std::span<const WeightedSampleRecord> records) {
  StatsAccumulator acc;
  for (const auto &rec : records)
    acc.add(rec);
  return acc.finish();
}

double reference_mean_genus(double n) {
  return (n - 1.0) / 2.0 - std::pow(16.98 * n - 110.61, 0.25);
}

StdHypothesisTransforms std_hypothesis_transforms(double std_genus,
                                                  double asymptote) {
  return {std::exp(std_genus), std::exp(std::exp(std_genus)),
          std::log(asymptote - std_genus)};
}

MeanGenusFit fit_mean_genus(std::span<const std::pair<double, double>> series,
                            double exponent) {
  if (series.size() < 2)
    throw std::invalid_argument("fit: need at least two points");
  MeanGenusFit fit;
  fit.exponent = exponent;
  std::vector<double> xs, ys;
  for (auto [n, mean] : series) {
    xs.push_back(n);
    ys.push_back(std::pow((n - 1.0) / 2.0 - mean, exponent));
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx == 0)
    throw std::invalid_argument("fit: all points share one n");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double norm2 = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double r = ys[k] - (fit.slope * xs[k] + fit.intercept);
    fit.residuals.push_back(r);
    norm2 += r * r;
  }
  fit.residual_norm = std::sqrt(norm2);
  return fit;
}

StabilityReport stability_report(std::span<const WeightedSampleRecord> records,
                                 double distortion_share) {
  WeightedStats s = aggregate(records);
  StabilityReport r;
  r.n = s.n;
  r.max_single_weight_share = s.max_single_weight_share;
  r.reference_bound = Rational(1, 12 * static_cast<unsigned long>(s.n));
  r.reference_bound_share = ratio(r.reference_bound, s.total_weight);
  if (s.n % 2 == 1) {
    Partition cycle({s.n});
    Permutation mu = canonical_representative(cycle);
    r.reference_max_genus_weight =
        compute_weight(StandardFormGem(cycle, compose(mu, mu))).weight.value;
  }
  r.distorted = s.max_single_weight_share >= distortion_share;
  return r;
}

namespace {

std::string histogram_field(const std::map<std::size_t, Rational> &h,
                            bool as_float) {
  std::string out;
  for (const auto &[g, mass] : h) {
    if (!out.empty())
      out += ';';
    out += std::to_string(g) + ':' +
           (as_float ? format_double(to_double(mass)) : to_fraction_string(mass));
  }
  return out;
}

} // namespace

std::string stats_csv_header() {
  return "n,count,rejected_total,total_weight,total_weight_float,"
         "genus_histogram,genus_histogram_float,mean_genus,std_genus,"
         "std_genus_normalised,std_log_growth,std_double_log_growth,"
         "std_finite_asymptote,mean_nontrivial_symmetries,"
         "mean_nontrivial_symmetries_unweighted,disconnected_proportion,"
         "max_single_weight,max_single_weight_share,reference_mean_genus";
}

std::string to_csv_row(const WeightedStats &s, double asymptote) {
  const auto t = std_hypothesis_transforms(s.std_genus, asymptote);
  std::string out;
  auto put = [&](const std::string &field) {
    if (!out.empty())
      out += ',';
    out += field;
  };
  put(std::to_string(s.n));
  put(std::to_string(s.count));
  put(std::to_string(s.rejected_total));
  put(to_fraction_string(s.total_weight));
  put(format_double(to_double(s.total_weight)));
  put(histogram_field(s.genus_histogram, false));
  put(histogram_field(s.genus_histogram, true));
  put(format_double(s.mean_genus));
  put(format_double(s.std_genus));
  put(format_double(s.std_genus_normalised));
  put(format_double(t.log_growth));
  put(format_double(t.double_log_growth));
  put(format_double(t.finite_asymptote));
  put(format_double(s.mean_nontrivial_symmetries));
  put(format_double(s.mean_nontrivial_symmetries_unweighted));
  put(format_double(s.disconnected_proportion));
  put(to_fraction_string(s.max_single_weight));
  put(format_double(s.max_single_weight_share));
  put(format_double(reference_mean_genus(static_cast<double>(s.n))));
  return out;
}

std::vector<std::pair<double, double>> read_mean_genus_series(std::istream &in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("stats CSV is empty");
  auto header = split_csv_line(line);
  auto column = [&](std::string_view name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw std::runtime_error("stats CSV lacks column '" + std::string(name) +
                               "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t n_col = column("n"), mean_col = column("mean_genus");
  std::vector<std::pair<double, double>> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r")
      continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("stats CSV row has " +
                               std::to_string(fields.size()) + " fields");
    out.emplace_back(std::stod(fields[n_col]), std::stod(fields[mean_col]));
  }
  return out;
}

std::string to_json(const MeanGenusFit &fit) {
  nlohmann::ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["exponent"] = fit.exponent;
  j["residual_norm"] = fit.residual_norm;
  j["residuals"] = fit.residuals;
  return j.dump(2);
}

} // namespace gemsample
