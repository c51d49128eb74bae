#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace cli {

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return columns[i];
  throw std::out_of_range("no column " + name);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t c = 0; c < t.names.size(); ++c) out << (c ? "," : "") << t.names[c];
  out << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << format_number(t.columns[c][r]);
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = t.meta;
  auto& data = doc["data"] = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < t.names.size(); ++c) {
    auto arr = nlohmann::ordered_json::array();
    // Round-trip through the 12-digit text so the dump is stable.
    for (double v : t.columns[c]) {
      if (std::isfinite(v))
        arr.push_back(std::strtod(format_number(v).c_str(), nullptr));
      else
        arr.push_back(nullptr);
    }
    data[t.names[c]] = std::move(arr);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cli
