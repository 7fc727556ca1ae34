#include "app.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "morrad/error.hpp"
#include "morrad/parallel.hpp"

namespace morrad::cli {
namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Domain:
      return kExitUsage;
    case ErrorKind::Validation:
    case ErrorKind::Hypothesis:
      return kExitValidation;
    case ErrorKind::Cap:
      return kExitCap;
    case ErrorKind::Check:
      return kExitCheck;
  }
  return kExitUsage;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Cap: return "cap";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Check: return "check";
  }
  return "error";
}

}  // namespace

int report_exit_code(const Report& report) {
  return report.checks.all_passed() ? kExitOk : kExitCheck;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morrey-type quasi-norms of dyadic step functions and Rademacher sums"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "seed for randomized scans")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (overrides MORRAD_THREADS)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", g.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out-file", g.out_file, "write the report here instead of stdout");

  std::function<Report()> action;

  NormOptions norm;
  auto* sub_norm = app.add_subcommand("norm", "evaluate or enclose one quasi-norm");
  sub_norm->add_option("--space", norm.space, "morrey|dyadic|kkl|marcinkiewicz|lp")->capture_default_str();
  sub_norm->add_option("--p", norm.p, "exponent")->capture_default_str();
  sub_norm->add_option("--weight", norm.weight, "weight spec")->capture_default_str();
  sub_norm->add_option("--input", norm.input, "step function file (.csv or binary)");
  sub_norm->add_option("--coeffs", norm.coeffs, "inline Rademacher coefficients a1,a2,...");
  sub_norm->add_option("--refine", norm.refine, "extra grid levels for enclosures")->capture_default_str();
  sub_norm->add_option("--resolution", norm.resolution, "resolution for --coeffs");
  sub_norm->add_option("--scan-cap", norm.scan_cap, "largest refined resolution for interval scans")
      ->capture_default_str();
  sub_norm->callback([&] { action = [&] { return cmd_norm(g, norm); }; });

  ScanOptions scan;
  auto* sub_scan = app.add_subcommand("equivalence-scan", "compare the dyadic norm of Rademacher sums with Phi");
  sub_scan->add_option("--p", scan.p)->capture_default_str();
  sub_scan->add_option("--weight", scan.weight)->capture_default_str();
  sub_scan->add_option("--n", scan.n, "number of coefficients")->capture_default_str();
  sub_scan->add_option("--trials", scan.trials)->capture_default_str();
  sub_scan->add_option("--family", scan.family, "mixed|ones-sqrt")->capture_default_str();
  sub_scan->callback([&] { action = [&] { return cmd_equivalence_scan(g, scan); }; });

  Remark1Options rem;
  auto* sub_rem = app.add_subcommand("remark1-compare", "compare three coefficient functionals");
  sub_rem->add_option("--q", rem.q)->capture_default_str();
  sub_rem->add_option("--n", rem.n)->capture_default_str();
  sub_rem->add_option("--trials", rem.trials)->capture_default_str();
  sub_rem->callback([&] { action = [&] { return cmd_remark1_compare(g, rem); }; });

  ConstructOptions con;
  auto* sub_con = app.add_subcommand("construct", "build and certify block systems or separating witnesses");
  sub_con->add_option("--rule", con.rule, "prop2|prop1")->capture_default_str();
  sub_con->add_option("--weight", con.weight)->capture_default_str();
  sub_con->add_option("--blocks", con.blocks)->capture_default_str();
  sub_con->add_option("--scan-cap", con.scan_cap)->capture_default_str();
  sub_con->add_option("--p", con.p)->capture_default_str();
  sub_con->add_option("--levels", con.levels)->capture_default_str();
  sub_con->add_option("--betas", con.betas)->capture_default_str();
  sub_con->callback([&] { action = [&] { return cmd_construct(g, con); }; });

  Theorem3Options th;
  auto* sub_th = app.add_subcommand("theorem3", "binomial combinatorics and the lower-bound table");
  sub_th->add_option("--weight", th.weight)->capture_default_str();
  sub_th->add_option("--jmax", th.jmax)->capture_default_str();
  sub_th->add_option("--variant", th.variant, "def|alt")->capture_default_str();
  sub_th->add_option("--checks", th.checks, "all or a comma list of ratio,ineq28,gauss,psi,stirling,fm")
      ->capture_default_str();
  sub_th->callback([&] { action = [&] { return cmd_theorem3(g, th); }; });

  WeightsOptions wo;
  auto* sub_w = app.add_subcommand("weights", "weight diagnostics");
  sub_w->require_subcommand(1);
  auto* sub_wc = sub_w->add_subcommand("check", "validate a weight and report its growth");
  sub_wc->add_option("--weight", wo.weight)->capture_default_str();
  sub_wc->add_option("--M", wo.M, "horizon for the growth check")->capture_default_str();
  sub_wc->add_option("--depth", wo.depth, "grid depth for validation")->capture_default_str();
  sub_wc->callback([&] { action = [&] { return cmd_weights_check(g, wo); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (g.threads > 0) set_thread_budget(g.threads);
  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    report = action();
  } catch (const Error& e) {
    err << kind_name(e.kind()) << " error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (int i = 0; i < argc; ++i) report.argv.emplace_back(argv[i]);

  std::ofstream file;
  if (!g.out_file.empty()) {
    file.open(g.out_file);
    if (!file) {
      err << "usage error: cannot open " << g.out_file << '\n';
      return kExitUsage;
    }
  }
  std::ostream& sink = g.out_file.empty() ? out : file;
  if (g.output == "csv") {
    write_csv(sink, report);
  } else {
    write_json(sink, report, wall);
  }

  if (report_exit_code(report) != kExitOk) {
    for (const CheckResult& c : report.checks.results()) {
      if (!c.passed) err << "check failed: " << c.name << " (" << c.detail << ")\n";
    }
    return report_exit_code(report);
  }
  for (const std::string& w : report.warnings) err << "warning: " << w << '\n';
  return kExitOk;
}

}  // namespace morrad::cli
