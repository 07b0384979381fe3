#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "prismconn/errors.hpp"

namespace prismconn {

// %.12g; nan/inf spelled the way most CSV readers accept.
inline std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  // Lines written verbatim before the header, prefixed with "# ".
  void comment(std::string line) { comments_.push_back(std::move(line)); }

  CsvTable& row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
      throw std::logic_error("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                             std::to_string(header_.size()));
    rows_.push_back(std::move(cells));
    return *this;
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string str() const {
    std::ostringstream out;
    for (const auto& c : comments_) out << "# " << c << '\n';
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
    return out.str();
  }

  void save(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << str();
  }

 private:
  static void write_line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out << '"';
        for (char ch : c) out << (ch == '"' ? "\"\"" : std::string(1, ch));
        out << '"';
      } else {
        out << c;
      }
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace prismconn
