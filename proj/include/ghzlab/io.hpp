#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ghzlab::io {

inline constexpr const char* kVersion = "1.0.0";

/// Shortest decimal that round-trips the exact binary64 value.
std::string fmt(double v);

/// One output cell: raw text plus whether JSON must quote it.
struct Cell {
  std::string text;
  bool quoted = false;
};

Cell cell(double v);
Cell cell(std::uint64_t v);
Cell cell(std::int64_t v);
Cell cell(int v);
Cell cell(bool v);  // "true"/"false", unquoted in JSON
Cell cell(std::string v);
Cell cell(const char* v);

/// Fully resolved run configuration, echoed at the end of every output so a
/// result file is reproducible on its own. Insertion order is preserved.
struct RunConfig {
  std::vector<std::pair<std::string, Cell>> entries;

  template <typename T>
  void set(std::string key, T value) {
    entries.emplace_back(std::move(key), cell(std::move(value)));
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws on width mismatch
};

/// UTF-8, comma separated, LF line ends; header line first, then one line
/// per row, then the config echo as '#'-prefixed trailer lines.
std::string render_csv(const Table& t, const RunConfig& cfg);

/// One JSON object per row, one per line, then a final {"config": {...}}.
std::string render_jsonl(const Table& t, const RunConfig& cfg);

enum class Format { Csv, Json };
std::string render(Format f, const Table& t, const RunConfig& cfg);

/// Writes to the named file, or stdout when path is "-" or empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace ghzlab::io
