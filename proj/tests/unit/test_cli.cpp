#include <doctest.h>

#include <sstream>
#include <string>
#include <cmath>
#include <vector>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/report.hpp"

using namespace morrad::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "morrad");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"norm", "--space", "sobolev", "--coeffs", "1"}).code == kExitUsage);
  CHECK(invoke({"norm", "--coeffs", "1", "--input", "x.csv"}).code == kExitUsage);
  CHECK(invoke({"--output", "xml", "weights", "check"}).code == kExitUsage);
  CHECK(invoke({"theorem3", "--checks", "nothing"}).code == kExitUsage);
}

TEST_CASE("validation errors exit 2") {
  CHECK(invoke({"weights", "check", "--weight", "power:q=0.5"}).code == kExitValidation);
  CHECK(invoke({"construct", "--rule", "prop2", "--weight", "log:q=2", "--scan-cap", "100000"}).code ==
        kExitValidation);
}

TEST_CASE("cap errors exit 3") {
  CHECK(invoke({"equivalence-scan", "--n", "15"}).code == kExitCap);
  CHECK(invoke({"norm", "--coeffs", "1,1", "--resolution", "25"}).code == kExitCap);
}

TEST_CASE("reports are json with the fixed key order") {
  const Outcome o = invoke({"norm", "--space", "dyadic", "--coeffs", "1,1,1", "--weight", "log:q=2", "--p", "2"});
  REQUIRE(o.code == kExitOk);
  const Json doc = Json::parse(o.out);
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"command", "argv", "rng", "config", "results", "checks",
                                         "warnings", "wall_time_s"});
  CHECK(doc["results"]["lower"].get<double>() == doctest::Approx(1.7320508075688772935));
  CHECK(doc["config"]["seed"].get<std::uint64_t>() == kDefaultSeed);
  CHECK(doc["checks"]["passed"].get<bool>());
}

TEST_CASE("identical configurations give identical reports") {
  const std::vector<std::string> args = {"--seed", "9", "equivalence-scan", "--trials", "30"};
  const Outcome a = invoke(args), b = invoke(args);
  REQUIRE(a.code == kExitOk);
  CHECK(canonical_dump(Json::parse(a.out)) == canonical_dump(Json::parse(b.out)));
  const Outcome c = invoke({"--seed", "10", "equivalence-scan", "--trials", "30"});
  CHECK(canonical_dump(Json::parse(a.out)) != canonical_dump(Json::parse(c.out)));
}

TEST_CASE("csv output") {
  const Outcome o = invoke({"--output", "csv", "equivalence-scan", "--family", "ones-sqrt", "--n", "3"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.rfind("label,n,dyadic,phi,ratio,l2,dyadic_over_l2,phi_over_l2\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : o.out) lines += ch == '\n';
  CHECK(lines == 4);
  const Outcome w = invoke({"--output", "csv", "weights", "check", "--weight", "log:q=3", "--M", "1000"});
  CHECK(w.out.find("condition10.trend,growing") != std::string::npos);
}

TEST_CASE("subcommands run clean") {
  CHECK(invoke({"weights", "check", "--weight", "log:q=3", "--M", "100000"}).code == kExitOk);
  CHECK(invoke({"construct", "--rule", "prop2", "--weight", "log:q=3", "--blocks", "5"}).code == kExitOk);
  CHECK(invoke({"construct", "--rule", "prop1", "--weight", "power:q=2", "--levels", "10"}).code == kExitOk);
  CHECK(invoke({"remark1-compare", "--q", "3"}).code == kExitOk);
  const Outcome t = invoke({"theorem3", "--weight", "log:q=2", "--jmax", "40", "--variant", "def"});
  CHECK(t.code == kExitOk);
  CHECK(t.err.find("warning:") != std::string::npos);
}

TEST_CASE("functional comparison convention") {
  const Outcome o = invoke({"remark1-compare", "--q", "3", "--trials", "0"});
  REQUIRE(o.code == kExitOk);
  const Json rows = Json::parse(o.out)["results"]["rows"];
  CHECK(rows[0]["phi_star"].get<double>() == doctest::Approx(2.0));
  CHECK(rows[0]["phi_K"].get<double>() == doctest::Approx(2.0));
  CHECK(rows[0]["phi"].get<double>() == doctest::Approx(1.0 + std::pow(2.0, -1.0 / 3.0)));
  // Alternating signs: signed partial sums stay bounded, absolute ones grow.
  CHECK(rows[1]["phi_over_phi_K"].get<double>() > 1.5);
}

TEST_CASE("failed checks exit 4 with the counterexample") {
  Report r;
  CHECK(report_exit_code(r) == kExitOk);
  r.checks.expect_le("demo", 2.0, 1.0, 0.0, "x = 3");
  CHECK(report_exit_code(r) == kExitCheck);
  const Json doc = to_json(r, 0.0);
  CHECK_FALSE(doc["checks"]["passed"].get<bool>());
  CHECK(doc["checks"]["items"][0]["detail"] == "x = 3");
  CHECK(doc["checks"]["items"][0]["margin"].get<double>() == -1.0);
}
