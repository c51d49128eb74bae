#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace cli {

// Column-oriented numeric table plus free-form metadata.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  void add(std::string name, std::vector<double> values) {
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
  }
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
};

std::string format_number(double v);
void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

}  // namespace cli
