#include "report.hpp"

#include <cmath>

#include "morrad/random.hpp"

namespace morrad::cli {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

Json to_json(const GridInterval& interval) {
  return Json{{"left", interval.left},
              {"right", interval.right},
              {"resolution", interval.resolution}};
}

Json to_json(const NormEnclosure& e) {
  return Json{{"lower", number(e.lower)},
              {"upper", number(e.upper)},
              {"witness", to_json(e.witness)},
              {"method", to_string(e.method)}};
}

Json to_json(const CheckLog& log) {
  Json items = Json::array();
  for (const CheckResult& r : log.results()) {
    items.push_back(Json{{"name", r.name},
                         {"passed", r.passed},
                         {"margin", number(r.margin)},
                         {"detail", r.detail}});
  }
  return Json{{"passed", log.all_passed()}, {"items", std::move(items)}};
}

Json to_json(const Report& report, double wall_time_s) {
  Json doc;
  doc["command"] = report.command;
  doc["argv"] = report.argv;
  doc["rng"] = Rng::kName;
  doc["config"] = report.config;
  doc["results"] = report.results;
  doc["checks"] = to_json(report.checks);
  doc["warnings"] = report.warnings;
  doc["wall_time_s"] = wall_time_s;
  return doc;
}

void write_json(std::ostream& out, const Report& report, double wall_time_s) {
  out << to_json(report, wall_time_s).dump(2) << '\n';
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), keys, values);
    }
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], prefix + "[" + std::to_string(i) + "]", keys, values);
    }
  } else {
    keys.push_back(prefix);
    values.push_back(v.is_array() ? "\"" + v.dump() + "\"" : csv_cell(v));
  }
}

}  // namespace

void write_csv(std::ostream& out, const Report& report) {
  if (!report.csv_header.empty()) {
    write_row(out, report.csv_header);
    for (const auto& row : report.csv_rows) {
      std::vector<std::string> cells;
      for (const Json& v : row) cells.push_back(csv_cell(v));
      write_row(out, cells);
    }
    return;
  }
  std::vector<std::string> keys, values;
  flatten(report.results, "", keys, values);
  out << "key,value\n";
  for (std::size_t i = 0; i < keys.size(); ++i) out << keys[i] << ',' << values[i] << '\n';
}

std::string canonical_dump(Json document) {
  if (document.is_object()) document.erase("wall_time_s");
  return document.dump();
}

}  // namespace morrad::cli
