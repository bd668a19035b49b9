#include "gemsample/record_io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gemsample {

namespace {

const char *const kColumns[] = {
    "n",           "draw_index", "worker_id", "lambda",     "sigma",
    "genus",       "num_vertices", "sym_cp",  "sym_swap",   "weight_num",
    "weight_den",  "log_weight", "rejected_attempts"};

std::string quoted(const std::string &field) {
  if (field.find_first_of(",\"") == std::string::npos)
    return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

template <typename T> T to_integer(const std::string &text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("not an integer: '" + text + "'");
  return v;
}

double to_real(const std::string &text) {
  double v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

Weight make_weight(const std::string &num, const std::string &den,
                   double log_value) {
  Weight w;
  w.value = parse_fraction(num + "/" + den);
  w.log_value = log_value;
  return w;
}

WeightedSampleRecord
record_from_fields(const std::vector<std::string> &header,
                   const std::vector<std::string> &fields) {
  if (fields.size() != header.size())
    throw std::invalid_argument("expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(fields.size()));
  auto get = [&](std::string_view key) -> const std::string & {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == key)
        return fields[k];
    throw std::invalid_argument("missing column '" + std::string(key) + "'");
  };
  const auto n = to_integer<std::size_t>(get("n"));
  WeightedSampleRecord rec{
      .n = n,
      .lambda = parse_partition(get("lambda")),
      .sigma = parse_permutation(get("sigma"), n),
      .genus = to_integer<std::size_t>(get("genus")),
      .num_vertices = to_integer<std::size_t>(get("num_vertices")),
      .sym_colour_preserving = to_integer<std::size_t>(get("sym_cp")),
      .sym_colour_swap = to_integer<unsigned>(get("sym_swap")),
      .weight = make_weight(get("weight_num"), get("weight_den"),
                            to_real(get("log_weight"))),
      .rejected_attempts = to_integer<std::uint64_t>(get("rejected_attempts")),
      .worker_id = to_integer<std::size_t>(get("worker_id")),
      .draw_index = to_integer<std::uint64_t>(get("draw_index")),
      .signature = std::nullopt,
  };
  for (const auto &h : header)
    if (h == "signature")
      rec.signature = get("signature");
  return rec;
}

nlohmann::ordered_json to_json(const WeightedSampleRecord &rec) {
  nlohmann::ordered_json j;
  j["n"] = rec.n;
  j["draw_index"] = rec.draw_index;
  j["worker_id"] = rec.worker_id;
  j["lambda"] = to_string(rec.lambda);
  j["sigma"] = to_string(rec.sigma);
  j["genus"] = rec.genus;
  j["num_vertices"] = rec.num_vertices;
  j["sym_cp"] = rec.sym_colour_preserving;
  j["sym_swap"] = rec.sym_colour_swap;
  j["weight_num"] = rec.weight.value.get_num().get_str();
  j["weight_den"] = rec.weight.value.get_den().get_str();
  j["log_weight"] = rec.weight.log_value;
  j["rejected_attempts"] = rec.rejected_attempts;
  if (rec.signature)
    j["signature"] = *rec.signature;
  return j;
}

WeightedSampleRecord record_from_json(const nlohmann::json &j) {
  const auto n = j.at("n").get<std::size_t>();
  WeightedSampleRecord rec{
      .n = n,
      .lambda = parse_partition(j.at("lambda").get<std::string>()),
      .sigma = parse_permutation(j.at("sigma").get<std::string>(), n),
      .genus = j.at("genus").get<std::size_t>(),
      .num_vertices = j.at("num_vertices").get<std::size_t>(),
      .sym_colour_preserving = j.at("sym_cp").get<std::size_t>(),
      .sym_colour_swap = j.at("sym_swap").get<unsigned>(),
      .weight = make_weight(j.at("weight_num").get<std::string>(),
                            j.at("weight_den").get<std::string>(),
                            j.at("log_weight").get<double>()),
      .rejected_attempts = j.at("rejected_attempts").get<std::uint64_t>(),
      .worker_id = j.at("worker_id").get<std::size_t>(),
      .draw_index = j.at("draw_index").get<std::uint64_t>(),
      .signature = std::nullopt,
  };
  if (j.contains("signature"))
    rec.signature = j.at("signature").get<std::string>();
  return rec;
}

void write_one(std::ostream &out, const WeightedSampleRecord &rec,
               RecordFormat format) {
  out << (format == RecordFormat::csv ? to_csv_row(rec) : to_jsonl(rec))
      << '\n';
}

} // namespace

RecordFormat parse_record_format(std::string_view name) {
  if (name == "csv")
    return RecordFormat::csv;
  if (name == "jsonl")
    return RecordFormat::jsonl;
  throw std::invalid_argument("unknown record format '" + std::string(name) +
                              "' (expected csv or jsonl)");
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string csv_header(bool with_signature) {
  std::string out;
  for (const char *col : kColumns) {
    if (!out.empty())
      out += ',';
    out += col;
  }
  if (with_signature)
    out += ",signature";
  return out;
}

std::string to_csv_row(const WeightedSampleRecord &rec) {
  std::string out;
  out += std::to_string(rec.n) + ',';
  out += std::to_string(rec.draw_index) + ',';
  out += std::to_string(rec.worker_id) + ',';
  out += to_string(rec.lambda) + ',';
  out += quoted(to_string(rec.sigma)) + ',';
  out += std::to_string(rec.genus) + ',';
  out += std::to_string(rec.num_vertices) + ',';
  out += std::to_string(rec.sym_colour_preserving) + ',';
  out += std::to_string(rec.sym_colour_swap) + ',';
  out += rec.weight.value.get_num().get_str() + ',';
  out += rec.weight.value.get_den().get_str() + ',';
  out += format_double(rec.weight.log_value) + ',';
  out += std::to_string(rec.rejected_attempts);
  if (rec.signature)
    out += ',' + quoted(*rec.signature);
  return out;
}

std::string to_jsonl(const WeightedSampleRecord &rec) {
  return to_json(rec).dump();
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (in_quotes)
    throw std::invalid_argument("unterminated quote in CSV line");
  return out;
}

void write_records(std::ostream &out, std::span<const WeightedSampleRecord> recs,
                   RecordFormat format, bool with_signature) {
  if (format == RecordFormat::csv)
    out << csv_header(with_signature) << '\n';
  for (const auto &rec : recs)
    write_one(out, rec, format);
}

std::vector<WeightedSampleRecord> read_records(std::istream &in) {
  std::vector<WeightedSampleRecord> out;
  std::vector<std::string> header;
  bool jsonl = false;
  bool first = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r")
      continue;
    try {
      if (first) {
        first = false;
        jsonl = line.front() == '{';
        if (!jsonl) {
          header = split_csv_line(line);
          continue;
        }
      }
      if (jsonl)
        out.push_back(record_from_json(nlohmann::json::parse(line)));
      else
        out.push_back(record_from_fields(header, split_csv_line(line)));
    } catch (const std::exception &e) {
      throw std::runtime_error("record line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return out;
}

std::vector<WeightedSampleRecord>
read_records(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  return read_records(in);
}

BatchSummary write_batch(const BatchConfig &cfg,
                         const std::filesystem::path &path,
                         RecordFormat format) {
  namespace fs = std::filesystem;
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const fs::path partial = path.string() + ".partial";
  std::vector<fs::path> parts;
  std::vector<std::unique_ptr<std::ofstream>> streams;
  std::vector<std::uint64_t> rejected(cfg.num_workers, 0);
  for (std::size_t w = 0; w < cfg.num_workers; ++w) {
    parts.push_back(path.string() + ".part" + std::to_string(w));
    streams.push_back(std::make_unique<std::ofstream>(parts.back()));
    if (!*streams.back())
      throw std::runtime_error("cannot write " + parts.back().string());
  }
  auto cleanup = [&] {
    streams.clear();
    std::error_code ec;
    for (const auto &p : parts)
      fs::remove(p, ec);
  };

  try {
    run_workers(cfg, [&](std::size_t w, const WeightedSampleRecord &rec) {
      write_one(*streams[w], rec, format);
      rejected[w] += rec.rejected_attempts;
      if (!*streams[w])
        throw std::runtime_error("write failed on " + parts[w].string());
    });
    for (auto &s : streams) {
      s->close();
      if (!*s)
        throw std::runtime_error("closing a worker part file failed");
    }

    std::ofstream out(partial, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write " + partial.string());
    if (format == RecordFormat::csv)
      out << csv_header(cfg.emit_signatures) << '\n';
    for (const auto &p : parts) {
      std::ifstream in(p, std::ios::binary);
      out << in.rdbuf();
      if (!out)
        throw std::runtime_error("write failed on " + partial.string());
    }
    out.close();
    if (!out)
      throw std::runtime_error("write failed on " + partial.string());
  } catch (...) {
    cleanup();
    std::ofstream marker(partial, std::ios::app);
    throw;
  }
  cleanup();
  fs::rename(partial, path);

  BatchSummary summary;
  summary.accepted = cfg.num_samples;
  for (auto r : rejected)
    summary.rejected += r;
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return summary;
}

} // namespace gemsample
