#include "biortho/report.hpp"

#include <sstream>

#include "json.hpp"

namespace biortho {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json value_to_json(const ReportValue& v) {
  return std::visit(
      [](const auto& x) -> ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cplx>) {
          return ordered_json{{"re", x.real()}, {"im", x.imag()}};
        } else {
          return ordered_json(x);
        }
      },
      v);
}

ordered_json records_to_json(const std::vector<ReportRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& rec : records) {
    ordered_json obj = ordered_json::object();
    for (const auto& [k, v] : rec.fields) obj[k] = value_to_json(v);
    arr.push_back(std::move(obj));
  }
  return arr;
}

// Shortest round-trip formatting, same as the JSON dump, period decimal
// separator regardless of locale.
std::string format_double(double d) {
  return ordered_json(d).dump();
}

void append_csv_value(std::ostringstream& os, const ReportValue& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cplx>) {
          os << format_double(x.real()) << ',' << format_double(x.imag());
        } else if constexpr (std::is_same_v<T, double>) {
          os << format_double(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          os << (x ? "true" : "false");
        } else {
          os << x;
        }
      },
      v);
}

}  // namespace

std::string RunReport::to_json() const {
  ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  ordered_json in = ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  doc["inputs"] = std::move(in);
  doc["outputs"] = records_to_json(outputs);
  if (!bounds.empty()) doc["bounds"] = records_to_json(bounds);
  if (has_pass) doc["pass"] = pass;
  doc["timing_ms"] = timing_ms;
  return doc.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  if (outputs.empty()) return "";
  // Header comes from the first record; complex fields expand to _re/_im.
  bool first = true;
  for (const auto& [k, v] : outputs.front().fields) {
    if (!first) os << ',';
    first = false;
    if (std::holds_alternative<Cplx>(v))
      os << k << "_re," << k << "_im";
    else
      os << k;
  }
  os << '\n';
  for (const auto& rec : outputs) {
    first = true;
    for (const auto& [k, v] : rec.fields) {
      (void)k;
      if (!first) os << ',';
      first = false;
      append_csv_value(os, v);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace biortho
