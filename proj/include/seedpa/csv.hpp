#pragma once

// Minimal RFC-4180-style CSV output: header row, '.' decimal point, 12
// significant digits. Deterministic formatting is the point — golden files
// are compared byte for byte.

#include "seedpa/errors.hpp"
#include "seedpa/io.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace seedpa {

inline std::string csv_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_cell(long long v) { return std::to_string(v); }
inline std::string csv_cell(std::uint64_t v) { return std::to_string(v); }
inline std::string csv_cell(unsigned v) { return std::to_string(v); }
inline std::string csv_cell(bool v) { return v ? "1" : "0"; }

inline std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvBuilder {
public:
  explicit CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
    append_row(header);
  }

  void add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
      throw validation_error("CsvBuilder: row width does not match header");
    append_row(cells);
  }

  const std::string& text() const { return text_; }

  void write(const std::string& path) const { atomic_write_text(path, text_); }

private:
  void append_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += csv_cell(cells[i]);
    }
    text_ += '\n';
  }

  std::size_t columns_;
  std::string text_;
};

}  // namespace seedpa
