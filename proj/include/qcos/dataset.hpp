#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qcos/encoding.hpp"
#include "qcos/errors.hpp"

/// CSV ingestion. A dataset row is d feature columns followed by a label in {-1,+1};
/// a first row that is not fully numeric is taken as a header. Decimal separator is '.'.
namespace qcos::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits one CSV record; double-quoted fields may contain commas.
inline std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.emplace_back(trim(field));
  return out;
}

inline std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

struct Row {
  std::size_t line;
  std::vector<double> values;
};

/// Numeric rows of a CSV stream, skipping blank lines and an optional header.
inline std::vector<Row> read_rows(std::istream& in, const std::string& source) {
  std::vector<Row> rows;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    Row row{line_no, {}};
    row.values.reserve(fields.size());
    std::optional<std::size_t> bad;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto v = parse_number(fields[c]);
      if (!v) {
        bad = c;
        break;
      }
      row.values.push_back(*v);
    }
    if (bad) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw DataError(source + ":" + std::to_string(line_no) + ": column " +
                      std::to_string(*bad + 1) + " value '" + fields[*bad] + "' is not a number");
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline TrainingSet parse_dataset(std::istream& in, const std::string& source = "<input>") {
  const auto rows = detail::read_rows(in, source);
  if (rows.empty()) throw DataError(source + ": dataset has no rows");
  const std::size_t width = rows.front().values.size();
  if (width < 2) {
    throw DataError(source + ":" + std::to_string(rows.front().line) +
                    ": need at least one feature column and a label column");
  }
  std::vector<LabeledPoint> pts;
  pts.reserve(rows.size());
  for (const auto& r : rows) {
    const std::string where = source + ":" + std::to_string(r.line) + ": ";
    if (r.values.size() != width) {
      throw DimensionMismatch(where + "row has " + std::to_string(r.values.size()) +
                              " columns, expected " + std::to_string(width));
    }
    const double label = r.values.back();
    if (label != 1.0 && label != -1.0) {
      std::ostringstream os;
      os << where << "label " << label << " is not in {-1,+1}";
      throw DataError(os.str());
    }
    std::vector<double> features(r.values.begin(), r.values.end() - 1);
    try {
      pts.push_back({DataVector(std::move(features)), static_cast<int>(label)});
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return TrainingSet(std::move(pts));
}

inline TrainingSet load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset " + path.string());
  return parse_dataset(in, path.string());
}

/// Query vector from a CSV file (first data row, all columns are features) or,
/// when `arg` is not an existing file, an inline comma-separated list.
inline DataVector load_query(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw DataError("cannot open query " + arg);
    const auto rows = detail::read_rows(in, arg);
    if (rows.empty()) throw DataError(arg + ": query file has no rows");
    return DataVector(rows.front().values);
  }
  std::vector<double> v;
  for (const auto& f : detail::split_csv(arg)) {
    auto n = detail::parse_number(f);
    if (!n) throw DataError("query '" + arg + "' is neither a file nor a numeric list");
    v.push_back(*n);
  }
  return DataVector(std::move(v));
}

}  // namespace qcos::io
