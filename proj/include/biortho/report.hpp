#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "biortho/cnum.hpp"

namespace biortho {

// One field of an output record. Complex values serialize as {re, im} in
// JSON and as a pair of _re/_im columns in CSV.
using ReportValue = std::variant<std::int64_t, double, Cplx, std::string, bool>;

struct ReportRecord {
  std::vector<std::pair<std::string, ReportValue>> fields;
  void put(std::string key, ReportValue v) {
    fields.emplace_back(std::move(key), std::move(v));
  }
};

// Machine-readable result of one CLI command. Serializes to a JSON document
// (schema 1) or to a CSV table whose columns follow the record field order.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<ReportRecord> outputs;
  std::vector<ReportRecord> bounds;  // optional
  bool has_pass = false;
  bool pass = false;
  std::int64_t timing_ms = 0;

  void input(std::string key, std::string value) {
    inputs.emplace_back(std::move(key), std::move(value));
  }

  std::string to_json() const;
  std::string to_csv() const;
};

}  // namespace biortho
