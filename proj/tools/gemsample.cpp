// gemsample: weighted uniform sampling of graph-encoded surfaces.
//
//   gemsample sample    --n 50 --count 100000 --seed 7 --output run_n50.csv
//   gemsample sample    --n-range 3..10 --count 1000 --output runs/
//   gemsample enumerate --n 3
//   gemsample stats     --input run_n50.csv --output stats.csv
//   gemsample fit       --input stats.csv --exponent 4
//   gemsample verify    --n 3 --count 1000000 --seed 1
//
// Exit codes: 0 ok, 1 runtime/IO failure, 2 usage error, 3 verification
// failure. Logs go to stderr; data goes to files or stdout.

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gemsample/oracle.hpp"
#include "gemsample/record_io.hpp"
#include "gemsample/sampler.hpp"
#include "gemsample/stats.hpp"

namespace fs = std::filesystem;
using namespace gemsample;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailed = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SampleOptions {
  std::optional<std::size_t> n;
  std::string n_range;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string output;
  std::string format = "csv";
  bool signatures = false;
};

struct EnumerateOptions {
  std::size_t n = 3;
  bool force = false;
  bool cells = false;
  std::string output;
};

struct StatsOptions {
  std::vector<std::string> inputs;
  std::string output;
  double asymptote = 1.5;
};

struct FitOptions {
  std::string input;
  double exponent = 4.0;
  std::string output;
};

struct VerifyOptions {
  std::size_t n = 3;
  std::size_t count = 1000000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  double z_limit = 5.0;
  std::string output;
};

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_flat_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read config file " + path);
  auto trim = [](std::string t) {
    const char *ws = " \t\r";
    t.erase(0, t.find_first_not_of(ws));
    t.erase(t.find_last_not_of(ws) + 1);
    if (t.size() >= 2 && t.front() == '"' && t.back() == '"')
      t = t.substr(1, t.size() - 2);
    return t;
  };
  std::map<std::string, std::string> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty())
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

// Options missing from the command line take their value from the config
// file, then from the environment, then keep their default.
void apply_fallbacks(CLI::App &sub, const std::string &config_path,
                     const std::map<std::string, std::string> &env_names) {
  std::map<std::string, std::string> file_values;
  if (!config_path.empty())
    file_values = read_flat_config(config_path);
  for (const auto &[key, value] : file_values)
    if (key == "config" || sub.get_option_no_throw("--" + key) == nullptr)
      throw UsageError("unknown key '" + key + "' in " + config_path);
  for (auto *opt : sub.get_options()) {
    const std::string key = opt->get_single_name();
    if (opt->count() > 0 || key == "help" || key == "config")
      continue;
    std::optional<std::string> value;
    if (auto it = file_values.find(key); it != file_values.end())
      value = it->second;
    else if (auto env = env_names.find(key); env != env_names.end())
      if (const char *v = std::getenv(env->second.c_str()); v && *v)
        value = v;
    if (value) {
      opt->add_result(*value);
      opt->run_callback();
    }
  }
}

void require(CLI::App &sub, const std::string &flag) {
  if (sub.get_option(flag)->count() == 0)
    throw UsageError(sub.get_name() + ": " + flag + " is required");
}

std::pair<std::size_t, std::size_t> parse_range(const std::string &text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw UsageError("--n-range expects A..B, got '" + text + "'");
  std::size_t lo = 0, hi = 0;
  auto a = text.substr(0, dots), b = text.substr(dots + 2);
  auto r1 = std::from_chars(a.data(), a.data() + a.size(), lo);
  auto r2 = std::from_chars(b.data(), b.data() + b.size(), hi);
  if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
      r1.ptr != a.data() + a.size() || r2.ptr != b.data() + b.size() ||
      lo == 0 || lo > hi)
    throw UsageError("--n-range expects 1 <= A <= B, got '" + text + "'");
  return {lo, hi};
}

// Where the records for one n go. A "{n}" in the path is substituted; a
// directory gets sample_n<n>.<ext>.
fs::path output_for(const std::string &output, std::size_t n,
                    const std::string &ext, bool many) {
  std::string path = output;
  if (auto pos = path.find("{n}"); pos != std::string::npos)
    return path.replace(pos, 3, std::to_string(n));
  if (fs::is_directory(path) || path.ends_with('/')) {
    fs::create_directories(path);
    return fs::path(path) / ("sample_n" + std::to_string(n) + "." + ext);
  }
  if (many)
    throw UsageError("--n-range needs --output to be a directory or contain "
                     "'{n}'");
  return path;
}

void write_text(const std::string &output, const std::string &text) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  out << text;
  if (!out)
    throw std::runtime_error("cannot write " + output);
}

int cmd_sample(const SampleOptions &opt) {
  if (opt.n.has_value() == !opt.n_range.empty())
    throw UsageError("give exactly one of --n and --n-range");
  auto [lo, hi] = opt.n ? std::pair{*opt.n, *opt.n} : parse_range(opt.n_range);
  const RecordFormat format = parse_record_format(opt.format);
  const bool many = lo != hi;
  if (many && opt.output.empty())
    throw UsageError("--n-range needs --output");

  for (std::size_t n = lo; n <= hi; ++n) {
    BatchConfig cfg{.n = n,
                    .num_samples = opt.count,
                    .master_seed = opt.seed,
                    .num_workers = opt.workers,
                    .emit_signatures = opt.signatures};
    BatchSummary summary;
    if (opt.output.empty() || opt.output == "-") {
      auto start = std::chrono::steady_clock::now();
      auto records = run_batch(cfg);
      write_records(std::cout, records, format, opt.signatures);
      summary.accepted = records.size();
      for (const auto &r : records)
        summary.rejected += r.rejected_attempts;
      summary.wall_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
    } else {
      summary = write_batch(cfg, output_for(opt.output, n, opt.format, many),
                            format);
    }
    const double attempts =
        static_cast<double>(summary.accepted) + static_cast<double>(summary.rejected);
    std::cerr << "n=" << n << " accepted=" << summary.accepted
              << " rejected=" << summary.rejected << " rejected_fraction="
              << static_cast<double>(summary.rejected) / attempts
              << " wall_seconds=" << summary.wall_seconds << "\n";
  }
  return kExitOk;
}

int cmd_enumerate(const EnumerateOptions &opt) {
  if (opt.n > kMaxEnumerationN && !opt.force)
    throw UsageError("enumerate --n " + std::to_string(opt.n) +
                     " is p(n) * n! pairs; pass --force to run it anyway "
                     "(the guard is n <= " +
                     std::to_string(kMaxEnumerationN) + ")");
  EnumerationReport report = enumerate_space(opt.n, opt.force);
  std::cout << format_table(report);
  if (opt.cells) {
    for (const auto &cell : report.cells) {
      std::cout << "lambda=" << to_string(report.partitions[cell.partition_index])
                << "; sigma=" << to_string(cell.sigma) << "  ";
      if (cell.class_index)
        std::cout << "class " << *cell.class_index << "\n";
      else
        std::cout << "disconnected\n";
    }
  }
  if (!opt.output.empty())
    write_text(opt.output, to_json(report) + "\n");
  return report.weight_mismatches == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_stats(const StatsOptions &opt) {
  std::string text = stats_csv_header() + "\n";
  for (const auto &input : opt.inputs) {
    auto records = read_records(fs::path(input));
    if (records.empty())
      throw std::runtime_error(input + ": no records");
    text += to_csv_row(aggregate(records), opt.asymptote) + "\n";
    std::cerr << input << ": " << records.size() << " records\n";
  }
  write_text(opt.output, text);
  return kExitOk;
}

int cmd_fit(const FitOptions &opt) {
  std::ifstream in(opt.input);
  if (!in)
    throw std::runtime_error("cannot open " + opt.input);
  auto series = read_mean_genus_series(in);
  write_text(opt.output, to_json(fit_mean_genus(series, opt.exponent)) + "\n");
  return kExitOk;
}

int cmd_verify(const VerifyOptions &opt) {
  Verification v =
      verify_sampler(opt.n, opt.count, opt.seed, opt.workers, opt.z_limit);
  std::cout << "verify n=" << v.n << " draws=" << v.num_draws << " "
            << to_string(v.status) << " max|z|=" << v.max_abs_z
            << " chi2=" << v.chi_square << "\n";
  for (const auto &c : v.classes)
    std::cout << "  size=" << c.class_size << " expected=" << c.expected_mass
              << " observed=" << c.observed_mass << " z=" << c.z << "\n";
  if (!opt.output.empty())
    write_text(opt.output, to_json(v) + "\n");
  return v.status == VerdictStatus::fail ? kExitVerifyFailed : kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Weighted uniform sampling of graph-encoded surfaces"};
  app.require_subcommand(1);
  std::string config_path;
  const std::map<std::string, std::string> env_names{
      {"seed", "GEMSAMPLE_SEED"}, {"workers", "GEMSAMPLE_WORKERS"}};

  SampleOptions sample_opt;
  auto *sample = app.add_subcommand("sample", "Run a sampling batch");
  sample->add_option("--config", config_path, "Flat key = value file of flag defaults");
  sample->add_option("--n", sample_opt.n, "Half the number of triangles")
      ->check(CLI::PositiveNumber);
  sample->add_option("--n-range", sample_opt.n_range, "Inclusive range A..B");
  sample->add_option("--count", sample_opt.count, "Accepted samples per n")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_opt.seed, "Master seed (env GEMSAMPLE_SEED)");
  sample->add_option("--workers", sample_opt.workers,
                     "Worker threads (env GEMSAMPLE_WORKERS)")
      ->check(CLI::PositiveNumber);
  sample->add_option("--output", sample_opt.output,
                     "File, directory, or path with {n}; stdout if absent");
  sample->add_option("--format", sample_opt.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sample->add_flag("--signatures", sample_opt.signatures,
                   "Add isomorphism signatures (quadratic cost)");

  EnumerateOptions enum_opt;
  auto *enumerate = app.add_subcommand("enumerate", "Exhaustive census");
  enumerate->add_option("--config", config_path, "Flat key = value file of flag defaults");
  enumerate->add_option("--n", enum_opt.n)->check(CLI::PositiveNumber);
  enumerate->add_flag("--force", enum_opt.force, "Allow n above the guard");
  enumerate->add_flag("--cells", enum_opt.cells, "List every (lambda, sigma)");
  enumerate->add_option("--output", enum_opt.output, "JSON report path");

  StatsOptions stats_opt;
  auto *stats = app.add_subcommand("stats", "Aggregate record files");
  stats->add_option("--config", config_path, "Flat key = value file of flag defaults");
  stats->add_option("--input", stats_opt.inputs, "Record files (CSV/JSONL)")
      ->check(CLI::ExistingFile);
  stats->add_option("--output", stats_opt.output, "Stats CSV; stdout if absent");
  stats->add_option("--asymptote", stats_opt.asymptote,
                    "Asymptote in the log(asymptote - std) transform");

  FitOptions fit_opt;
  auto *fit = app.add_subcommand("fit", "Fit the mean-genus regression");
  fit->add_option("--config", config_path, "Flat key = value file of flag defaults");
  fit->add_option("--input", fit_opt.input, "Stats CSV")
      ->check(CLI::ExistingFile);
  fit->add_option("--exponent", fit_opt.exponent, "Power of the difference");
  fit->add_option("--output", fit_opt.output, "JSON path; stdout if absent");

  VerifyOptions verify_opt;
  auto *verify = app.add_subcommand("verify", "Check the sampler against the census");
  verify->add_option("--config", config_path, "Flat key = value file of flag defaults");
  verify->add_option("--n", verify_opt.n)->check(CLI::PositiveNumber);
  verify->add_option("--count", verify_opt.count)->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_opt.seed, "Master seed (env GEMSAMPLE_SEED)");
  verify->add_option("--workers", verify_opt.workers,
                     "Worker threads (env GEMSAMPLE_WORKERS)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--z-limit", verify_opt.z_limit);
  verify->add_option("--output", verify_opt.output, "JSON verdict path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    CLI::App *chosen = app.get_subcommands().front();
    apply_fallbacks(*chosen, config_path, env_names);
    if (chosen == enumerate || chosen == verify)
      require(*chosen, "--n");
    if (chosen == stats || chosen == fit)
      require(*chosen, "--input");
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*sample)
      return cmd_sample(sample_opt);
    if (*enumerate)
      return cmd_enumerate(enum_opt);
    if (*stats)
      return cmd_stats(stats_opt);
    if (*fit)
      return cmd_fit(fit_opt);
    if (*verify)
      return cmd_verify(verify_opt);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
