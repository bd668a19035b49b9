#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gemsample/sampler.hpp"

namespace gemsample {

enum class RecordFormat { csv, jsonl };

RecordFormat parse_record_format(std::string_view name);

/// n,draw_index,worker_id,lambda,sigma,genus,num_vertices,sym_cp,sym_swap,
/// weight_num,weight_den,log_weight,rejected_attempts (plus signature when
/// requested).
std::string csv_header(bool with_signature);
std::string to_csv_row(const WeightedSampleRecord &rec);
std::string to_jsonl(const WeightedSampleRecord &rec);

/// Splits one CSV line, honouring double quotes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Shortest round-trip decimal form.
std::string format_double(double v);

void write_records(std::ostream &out, std::span<const WeightedSampleRecord> recs,
                   RecordFormat format, bool with_signature);

/// Reads CSV (with header) or JSONL, detected from the first line. Throws
/// std::runtime_error with the line number on malformed input.
std::vector<WeightedSampleRecord> read_records(std::istream &in);
std::vector<WeightedSampleRecord> read_records(const std::filesystem::path &path);

struct BatchSummary {
  std::size_t accepted = 0;
  std::uint64_t rejected = 0;
  double wall_seconds = 0.0;
};

/// Runs the batch and writes it to `path`. Workers write to their own part
/// files which are concatenated in worker order into "<path>.partial" and
/// renamed to `path` on success. On failure the ".partial" file stays
/// behind as the marker and the error is rethrown.
BatchSummary write_batch(const BatchConfig &cfg,
                         const std::filesystem::path &path,
                         RecordFormat format);

} // namespace gemsample
