#ifndef MORRAD_CLI_REPORT_HPP_
#define MORRAD_CLI_REPORT_HPP_

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "morrad/check.hpp"
#include "morrad/norms.hpp"
#include "morrad/stepfn.hpp"

namespace morrad::cli {

using Json = nlohmann::ordered_json;

// Everything a subcommand produces. The wall time is attached at
// serialisation so that the rest of the document is reproducible.
struct Report {
  std::string command;
  std::vector<std::string> argv;
  Json config = Json::object();
  Json results = Json::object();
  CheckLog checks;
  std::vector<std::string> warnings;
  // Optional tabular form for --output csv.
  std::vector<std::string> csv_header;
  std::vector<std::vector<Json>> csv_rows;
};

Json to_json(const GridInterval& interval);
Json to_json(const NormEnclosure& enclosure);
Json to_json(const CheckLog& log);
// Non-finite values become null.
Json number(double x);

// Full report; the "wall_time_s" key is last and is the only field that
// may differ between identical runs.
Json to_json(const Report& report, double wall_time_s);
void write_json(std::ostream& out, const Report& report, double wall_time_s);
void write_csv(std::ostream& out, const Report& report);

// Drops "wall_time_s" for reproducibility comparisons.
std::string canonical_dump(Json document);

}  // namespace morrad::cli

#endif  // MORRAD_CLI_REPORT_HPP_
