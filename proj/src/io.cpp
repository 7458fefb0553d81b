#include "ghzlab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ghzlab::io {

std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Cell cell(double v) { return {fmt(v), false}; }
Cell cell(std::uint64_t v) { return {std::to_string(v), false}; }
Cell cell(std::int64_t v) { return {std::to_string(v), false}; }
Cell cell(int v) { return {std::to_string(v), false}; }
Cell cell(bool v) { return {v ? "true" : "false", false}; }
Cell cell(std::string v) { return {std::move(v), true}; }
Cell cell(const char* v) { return {std::string(v), true}; }

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("row width differs from the column count");
  rows.push_back(std::move(row));
}

namespace {

// CSV quoting per RFC 4180: quote only when the cell needs it.
void append_csv(std::string& out, const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) {
    out += text;
    return;
  }
  out += '"';
  for (const char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

void append_json_string(std::string& out, const std::string& text) {
  out += '"';
  for (const char ch : text) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_json_value(std::string& out, const Cell& c) {
  if (c.quoted)
    append_json_string(out, c.text);
  else
    out += c.text;
}

}  // namespace

std::string render_csv(const Table& t, const RunConfig& cfg) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    append_csv(out, t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      append_csv(out, row[i].text);
    }
    out += '\n';
  }
  for (const auto& [key, value] : cfg.entries) {
    out += "# ";
    out += key;
    out += '=';
    out += value.text;
    out += '\n';
  }
  return out;
}

std::string render_jsonl(const Table& t, const RunConfig& cfg) {
  std::string out;
  for (const auto& row : t.rows) {
    out += '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      append_json_string(out, t.columns[i]);
      out += ':';
      append_json_value(out, row[i]);
    }
    out += "}\n";
  }
  out += "{\"config\":{";
  for (std::size_t i = 0; i < cfg.entries.size(); ++i) {
    if (i) out += ',';
    append_json_string(out, cfg.entries[i].first);
    out += ':';
    append_json_value(out, cfg.entries[i].second);
  }
  out += "}}\n";
  return out;
}

std::string render(Format f, const Table& t, const RunConfig& cfg) {
  return f == Format::Csv ? render_csv(t, cfg) : render_jsonl(t, cfg);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace ghzlab::io
