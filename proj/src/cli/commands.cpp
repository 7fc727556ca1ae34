#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "morrad/constructions.hpp"
#include "morrad/error.hpp"
#include "morrad/norms.hpp"
#include "morrad/parallel.hpp"
#include "morrad/rademacher.hpp"
#include "morrad/random.hpp"
#include "morrad/stepfn_io.hpp"
#include "morrad/theorem3.hpp"
#include "morrad/weight.hpp"

namespace morrad::cli {
namespace {

constexpr std::int64_t kValidationDepth = 64;

Json global_json(const GlobalOptions& g) {
  return Json{{"seed", g.seed}, {"threads", thread_budget()}, {"output", g.output}};
}

Weight load_weight(const std::string& spec, std::int64_t depth = kValidationDepth) {
  Weight w = Weight::parse(spec);
  validate(w, depth);
  return w;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double l2(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

struct Sample {
  std::string label;
  std::vector<double> a;
};

// The witness reproduces the reported lower end.
void check_witness(CheckLog& log, const StepFunction& f, double p, const Weight& w,
                   const NormEnclosure& e) {
  const double again = interval_functional(f, p, w, e.witness);
  const double err = std::fabs(again - e.lower);
  const double tol = 1e-12 * std::max(1.0, e.lower);
  log.expect("witness-attains-lower", err <= tol, tol - err,
             "re-evaluated " + fmt(again) + ", reported " + fmt(e.lower));
}

}  // namespace

Report cmd_norm(const GlobalOptions& g, const NormOptions& o) {
  Report r;
  r.command = "norm";
  const Weight w = load_weight(o.weight);
  static const std::vector<std::string> spaces = {"morrey", "dyadic", "kkl", "marcinkiewicz", "lp"};
  if (std::find(spaces.begin(), spaces.end(), o.space) == spaces.end()) {
    throw UsageError("unknown space '" + o.space + "'");
  }
  if (o.coeffs.empty() == o.input.empty()) {
    throw UsageError("give exactly one of --input and --coeffs");
  }
  r.config = global_json(g);
  r.config["space"] = o.space;
  r.config["p"] = o.p;
  r.config["weight"] = w.spec();
  r.config["input"] = o.input;
  r.config["coeffs"] = o.coeffs;
  r.config["refine"] = o.refine;
  r.config["scan_cap"] = o.scan_cap;

  NormEnclosure e;
  int resolution = 0;
  if (!o.coeffs.empty() && o.space == "lp") {
    const CoefficientVector a = CoefficientVector::parse_inline(o.coeffs);
    e.lower = e.upper = exact_lp(a, o.p);
    resolution = static_cast<int>(a.size());
    e.witness = GridInterval::whole();
  } else {
    StepFunction f;
    if (!o.coeffs.empty()) {
      const CoefficientVector a = CoefficientVector::parse_inline(o.coeffs);
      const int n = static_cast<int>(a.size());
      f = materialize(a, o.resolution < 0 ? n : o.resolution);
    } else {
      f = load_stepfn(o.input);
    }
    resolution = f.resolution();
    if (o.space == "dyadic") {
      e = dyadic_morrey(f, o.p, w);
      check_witness(r.checks, f, o.p, w, e);
    } else if (o.space == "morrey") {
      e = morrey(f, o.p, w, o.refine, o.scan_cap);
      check_witness(r.checks, f, o.p, w, e);
    } else if (o.space == "kkl") {
      e = kkl_norm(f, o.p, w, o.refine);
      check_witness(r.checks, f, o.p, w, e);
    } else if (o.space == "marcinkiewicz") {
      e = marcinkiewicz_norm(f, o.p, w, o.refine);
      check_witness(r.checks, rearrange(f), o.p, w, e);
    } else {
      e.lower = e.upper = f.lp_norm(o.p);
      e.witness = GridInterval::whole();
    }
  }
  r.checks.expect_le("enclosure-order", e.lower, e.upper);

  r.results = Json{{"space", o.space}, {"p", o.p}, {"weight", w.spec()}};
  const Json enc = to_json(e);
  for (auto it = enc.begin(); it != enc.end(); ++it) r.results[it.key()] = it.value();
  r.results["resolution"] = resolution;
  return r;
}

Report cmd_equivalence_scan(const GlobalOptions& g, const ScanOptions& o) {
  Report r;
  r.command = "equivalence-scan";
  const Weight w = load_weight(o.weight);
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (o.n > 14) throw CapError("equivalence-scan evaluates exact dyadic norms at resolution n; n <= 14");
  if (o.family != "mixed" && o.family != "ones-sqrt") {
    throw UsageError("unknown family '" + o.family + "'");
  }
  r.config = global_json(g);
  r.config["p"] = o.p;
  r.config["weight"] = w.spec();
  r.config["n"] = o.n;
  r.config["trials"] = o.trials;
  r.config["family"] = o.family;

  const auto n = static_cast<std::size_t>(o.n);
  std::vector<Sample> samples;
  if (o.family == "ones-sqrt") {
    for (std::size_t m = 1; m <= n; ++m) {
      samples.push_back({"ones/sqrt(" + std::to_string(m) + ")",
                         std::vector<double>(m, 1.0 / std::sqrt(static_cast<double>(m)))});
    }
  } else {
    std::vector<double> geometric(n);
    for (std::size_t k = 0; k < n; ++k) geometric[k] = std::ldexp(1.0, -static_cast<int>(k + 1));
    samples.push_back({"e_1", std::vector<double>{1.0}});
    samples.push_back({"ones", std::vector<double>(n, 1.0)});
    samples.push_back({"ones/sqrt(n)", std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))});
    samples.push_back({"geometric", geometric});
    Rng rng(g.seed);
    for (int t = 0; t < o.trials; ++t) {
      std::vector<double> a(n);
      for (double& x : a) x = rng.uniform(-1.0, 1.0);
      samples.push_back({"random#" + std::to_string(t), std::move(a)});
    }
  }

  Json rows = Json::array();
  r.csv_header = {"label", "n", "dyadic", "phi", "ratio", "l2", "dyadic_over_l2", "phi_over_l2"};
  double min_ratio = INFINITY, max_ratio = -INFINITY, max_dyadic_l2 = 0.0, max_phi_l2 = 0.0;
  std::string argmin, argmax;
  for (const Sample& s : samples) {
    const SandwichCheck t = rademacher_sandwich(s.a, o.p, w);
    r.checks.merge(t.checks);
    const double norm2 = l2(s.a);
    const double ratio = t.dyadic / t.phi_total;
    if (ratio < min_ratio) {
      min_ratio = ratio;
      argmin = s.label;
    }
    if (ratio > max_ratio) {
      max_ratio = ratio;
      argmax = s.label;
    }
    max_dyadic_l2 = std::max(max_dyadic_l2, t.dyadic / norm2);
    max_phi_l2 = std::max(max_phi_l2, t.phi_total / norm2);
    Json row{{"label", s.label},        {"n", s.a.size()},
             {"dyadic", t.dyadic},      {"phi", t.phi_total},
             {"ratio", ratio},          {"l2", norm2},
             {"dyadic_over_l2", t.dyadic / norm2}, {"phi_over_l2", t.phi_total / norm2},
             {"sandwich_lower", t.lower}, {"sandwich_upper", t.upper}};
    r.csv_rows.push_back({row["label"], row["n"], row["dyadic"], row["phi"], row["ratio"],
                          row["l2"], row["dyadic_over_l2"], row["phi_over_l2"]});
    rows.push_back(std::move(row));
  }
  r.results = Json{{"samples", samples.size()},
                   {"min_ratio", min_ratio},
                   {"argmin", argmin},
                   {"max_ratio", max_ratio},
                   {"argmax", argmax},
                   {"max_dyadic_over_l2", max_dyadic_l2},
                   {"max_phi_over_l2", max_phi_l2},
                   {"rows", std::move(rows)}};
  return r;
}

Report cmd_remark1_compare(const GlobalOptions& g, const Remark1Options& o) {
  Report r;
  r.command = "remark1-compare";
  if (!(o.q > 0.0)) throw UsageError("--q must be positive");
  if (o.n < 1) throw UsageError("--n must be >= 1");
  if (o.q <= 2.0) r.warnings.push_back("q <= 2: the comparison is meant for q > 2");
  const Weight w = Weight::log(o.q);
  r.config = global_json(g);
  r.config["q"] = o.q;
  r.config["n"] = o.n;
  r.config["trials"] = o.trials;

  const auto n = static_cast<std::size_t>(o.n);
  std::vector<Sample> samples;
  samples.push_back({"(1)", {1.0}});
  std::vector<double> alternating(n), harmonic(n);
  for (std::size_t k = 0; k < n; ++k) {
    alternating[k] = (k % 2 == 0) ? 1.0 : -1.0;
    harmonic[k] = 1.0 / static_cast<double>(k + 1);
  }
  samples.push_back({"alternating", alternating});
  samples.push_back({"1/k", harmonic});
  Rng rng(g.seed);
  for (int t = 0; t < o.trials; ++t) {
    std::vector<double> a(n);
    const bool signed_sample = t % 2 == 1;
    for (double& x : a) x = signed_sample ? rng.uniform(-1.0, 1.0) : rng.uniform();
    samples.push_back({std::string(signed_sample ? "signed#" : "nonneg#") + std::to_string(t),
                       std::move(a)});
  }

  Json rows = Json::array();
  r.csv_header = {"label", "phi_star", "phi", "phi_K", "phi_over_phi_star", "phi_over_phi_K"};
  std::size_t ordered = 0, nonneg = 0;
  for (const Sample& s : samples) {
    const double ps = phi_star(s.a, o.q).total;
    const double pw = phi(s.a, w).total;
    const double pk = phi_K(s.a, o.q).total;
    const bool is_nonneg = std::all_of(s.a.begin(), s.a.end(), [](double x) { return x >= 0.0; });
    if (is_nonneg) {
      ++nonneg;
      if (pk <= pw && pw <= ps) ++ordered;
    }
    Json row{{"label", s.label},
             {"phi_star", ps},
             {"phi", pw},
             {"phi_K", pk},
             {"phi_over_phi_star", pw / ps},
             {"phi_over_phi_K", pw / pk},
             {"phi_star_over_phi_K", ps / pk}};
    r.csv_rows.push_back({row["label"], row["phi_star"], row["phi"], row["phi_K"],
                          row["phi_over_phi_star"], row["phi_over_phi_K"]});
    rows.push_back(std::move(row));
  }
  r.results = Json{
      {"convention",
       "phi uses w(2^-m) = (m+1)^(-1/q); phi_star and phi_K use m^(-1/q), so a = (1) "
       "gives phi = 1 + 2^(-1/q) against 2 for the other two"},
      {"nonnegative_samples", nonneg},
      {"nonnegative_ordered_phiK_phi_phistar", ordered},
      {"rows", std::move(rows)}};
  return r;
}

Report cmd_construct(const GlobalOptions& g, const ConstructOptions& o) {
  Report r;
  r.command = "construct";
  const Weight w = load_weight(o.weight);
  r.config = global_json(g);
  r.config["rule"] = o.rule;
  r.config["weight"] = w.spec();

  if (o.rule == "prop1") {
    r.config["p"] = o.p;
    r.config["levels"] = o.levels;
    const SeparatingWitness s = prop1_witness(o.p, w, o.levels);
    r.checks.merge(s.checks);
    Json levels = Json::array();
    for (std::size_t k = 0; k < s.exponents.size(); ++k) {
      levels.push_back(Json{{"k", k + 1},
                            {"t_exponent", s.exponents[k]},
                            {"v", s.v[k]},
                            {"tail_integral", s.tail_integrals[k]},
                            {"witness_value", s.witness_values[k]}});
    }
    r.results = Json{{"resolution", s.f.resolution()},
                     {"levels", std::move(levels)},
                     {"kkl", to_json(s.kkl)},
                     {"lp", s.f.lp_norm(o.p)}};
    return r;
  }
  if (o.rule != "prop2") throw UsageError("unknown rule '" + o.rule + "'");

  r.config["blocks"] = o.blocks;
  r.config["scan_cap"] = o.scan_cap;
  r.config["betas"] = o.betas;
  const Condition10Report c10 = check_condition10(w, 1000000);
  if (c10.trend != Trend::Growing) {
    r.warnings.push_back("w(2^-m) sqrt(m) is " + c10.verdict() +
                         "; the selection needs it to be unbounded");
  }
  const std::vector<std::int64_t> idx = prop2_indices(w, o.blocks, o.scan_cap);
  const BlockSystem sys = halving_subsequence(prop2_blocks(w, idx));
  r.checks.merge(sys.checks);
  const auto betas = beta_batch(sys.selected.size(), static_cast<std::size_t>(o.betas), g.seed);
  const RatioReport c0 = c0_certificate(sys, betas);
  r.checks.merge(c0.checks);
  const RatioReport p5 = prop5_check(normalize_blocks(sys), w, betas);
  r.checks.merge(p5.checks);

  Json blocks = Json::array();
  for (std::size_t k = 1; k <= sys.block_count(); ++k) {
    blocks.push_back(Json{{"k", k},
                          {"first", sys.block_first(k)},
                          {"last", sys.block_last(k)},
                          {"coefficient", sys.coefficients[k - 1]},
                          {"l2", sys.block(k).l2_norm()},
                          {"phi", phi(sys.block(k), w).total}});
  }
  auto ratios = [](const RatioReport& rr) {
    return Json{{"samples", rr.samples},       {"min_ratio", rr.min_ratio},
                {"argmin", rr.argmin},         {"max_ratio", rr.max_ratio},
                {"argmax", rr.argmax},         {"proof_lower", rr.proof_lower},
                {"proof_upper", rr.proof_upper}};
  };
  r.results = Json{{"indices", idx},
                   {"blocks", std::move(blocks)},
                   {"selected", sys.selected},
                   {"c0_certificate", ratios(c0)},
                   {"normalized_certificate", ratios(p5)}};
  return r;
}

Report cmd_theorem3(const GlobalOptions& g, const Theorem3Options& o) {
  Report r;
  r.command = "theorem3";
  const Weight w = load_weight(o.weight);
  const EmVariant variant = parse_variant(o.variant);
  if (o.jmax < 1) throw UsageError("--jmax must be >= 1");
  std::vector<std::string> wanted;
  {
    std::stringstream ss(o.checks);
    std::string item;
    while (std::getline(ss, item, ',')) wanted.push_back(item);
  }
  static const std::vector<std::string> known = {"all", "ratio", "ineq28", "gauss", "psi", "stirling", "fm"};
  for (const std::string& c : wanted) {
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      throw UsageError("unknown check '" + c + "'");
    }
  }
  auto on = [&](const std::string& c) {
    return std::find(wanted.begin(), wanted.end(), "all") != wanted.end() ||
           std::find(wanted.begin(), wanted.end(), c) != wanted.end();
  };
  r.config = global_json(g);
  r.config["weight"] = w.spec();
  r.config["jmax"] = o.jmax;
  r.config["variant"] = to_string(variant);
  r.config["checks"] = o.checks;

  const LowerBoundTable table = lower_bound_table(w, o.jmax, variant);
  r.warnings = table.warnings;
  Json rows = Json::array();
  r.csv_header = {"m", "measure", "sigma", "bound", "normalized", "reference"};
  for (const LowerBoundRow& row : table.rows) {
    rows.push_back(Json{{"m", row.m},
                        {"measure", row.measure},
                        {"sigma_scaled", row.sigma_scaled},
                        {"bound", row.bound},
                        {"normalized", row.normalized},
                        {"reference", row.reference}});
    r.csv_rows.push_back({row.m, row.measure, row.sigma_scaled, row.bound, row.normalized,
                          row.reference});
  }

  Json em = Json::array();
  for (std::int64_t j = 1; j <= o.jmax; ++j) {
    const EmReport e = e_report(2 * j * j);
    r.checks.merge(e.checks);
    if (e.exact && j <= 3) {
      em.push_back(Json{{"m", e.m},
                        {"count_def", e.count_def},
                        {"count_alt", e.count_alt},
                        {"sigma_def", e.sigma_def},
                        {"sigma_paper", e.sigma_paper},
                        {"enumerated", e.enumerated}});
    }
    if (j == 1) {
      r.checks.expect("sigma-wide-m2", e.sigma_paper == "8", 0.0, "sigma_paper(2) = " + e.sigma_paper);
    }
  }

  Json side = Json::object();
  if (on("ratio")) {
    for (std::int64_t j = 1; j <= std::min(o.jmax, kExactMaxJ); ++j) {
      r.checks.merge(ratio_bound_check(2 * j * j));
    }
  }
  if (on("ineq28")) r.checks.merge(ineq28_check());
  if (on("psi")) {
    for (std::int64_t j = 1; j <= o.jmax; ++j) r.checks.merge(psi_monotone_check(2 * j * j));
  }
  if (on("gauss")) {
    Json gauss = Json::array();
    std::int64_t third_failures = 0;
    for (std::int64_t j = 1; j <= o.jmax; ++j) {
      const GaussSumReport gs = gauss_sum_check(2 * j * j);
      r.checks.expect_le("gauss-intermediate", gs.intermediate, gs.sum, 0.0,
                         "m = " + std::to_string(gs.m));
      if (!gs.exceeds_third) ++third_failures;
      gauss.push_back(Json{{"m", gs.m},
                           {"sum", gs.sum},
                           {"intermediate", gs.intermediate},
                           {"third", gs.third},
                           {"exceeds_third", gs.exceeds_third}});
    }
    if (third_failures > 0) {
      r.warnings.push_back("gauss sum stays below m/3 for " + std::to_string(third_failures) + " of " +
                           std::to_string(o.jmax) +
                           " rows; the intermediate bound (m/2)(1 - e^-1/2) is itself below m/3");
    }
    side["gauss"] = std::move(gauss);
  }
  if (on("stirling")) {
    Json st = Json::array();
    double prev = 0.0;
    for (std::int64_t j = 1; j <= o.jmax; ++j) {
      const std::int64_t m = 2 * j * j;
      const double s = stirling_value(m);
      const std::string where = "m = " + std::to_string(m) + ", value " + fmt(s);
      r.checks.expect("stirling-range", s > 0.9 && s < 1.0, std::min(s - 0.9, 1.0 - s), where);
      if (m >= 8) {
        r.checks.expect("stirling-range-m8", s > 0.95 && s < 1.0, std::min(s - 0.95, 1.0 - s), where);
      }
      if (j > 1) r.checks.expect("stirling-increasing", s > prev, s - prev, where);
      prev = s;
      st.push_back(Json{{"m", m}, {"value", s}});
    }
    side["stirling"] = std::move(st);
  }
  if (on("fm")) {
    Json fm = Json::array();
    for (std::int64_t m : {std::int64_t{2}, std::int64_t{8}}) {
      if (j_of(m) > o.jmax) break;
      const FmCheck f = f_m_check(m, w, variant);
      r.checks.expect_le("fm-admissible", f.norm, 1.0, 1e-9, "m = " + std::to_string(m));
      const StepFunction sum = materialize(std::vector<double>(2 * m, 1.0), static_cast<int>(2 * m), 24);
      const double pairing = dual_pairing_lower(sum, f.testfn, w, 1.0);
      const double bound = table.rows[j_of(m) - 1].bound;
      const double err = std::fabs(pairing - bound);
      const double tol = 1e-9 * std::max(1.0, bound);
      r.checks.expect("pairing-consistency", err <= tol, tol - err,
                      "m = " + std::to_string(m) + ": pairing " + fmt(pairing) + ", table " + fmt(bound));
      fm.push_back(Json{{"m", m}, {"norm", f.norm}, {"measure", f.measure}, {"pairing", pairing}});
    }
    side["fm"] = std::move(fm);
  }

  r.results = Json{{"variant", to_string(variant)},
                   {"measure_trend", to_string(table.measure_trend)},
                   {"normalized_trend", to_string(table.normalized_trend)},
                   {"rows", std::move(rows)},
                   {"em", std::move(em)},
                   {"side_checks", std::move(side)}};
  return r;
}

Report cmd_weights_check(const GlobalOptions& g, const WeightsOptions& o) {
  Report r;
  r.command = "weights check";
  if (o.M < 1) throw UsageError("--M must be >= 1");
  if (o.depth < 1) throw UsageError("--depth must be >= 1");
  const Weight w = Weight::parse(o.weight);
  const WeightDiagnostics d = validate(w, o.depth);
  const Condition10Report c = check_condition10(w, o.M);
  r.config = global_json(g);
  r.config["weight"] = w.spec();
  r.config["M"] = o.M;
  r.config["depth"] = o.depth;

  r.checks.expect_le("doubling-bound", d.doubling_constant,
                     WeightDiagnostics::kAnalyticDoublingBound, 1e-12);
  r.checks.expect_le("condition10-sup-vs-w-half", w.at_dyadic(1), c.sup, 1e-15);
  r.results = Json{{"weight", w.spec()},
                   {"quasi_concave", d.quasi_concave},
                   {"doubling_constant", d.doubling_constant},
                   {"analytic_doubling_bound", WeightDiagnostics::kAnalyticDoublingBound},
                   {"w_zero_limit_estimate", d.w_zero_limit_estimate},
                   {"grid_depth", d.grid_depth},
                   {"condition10",
                    Json{{"sup", c.sup},
                         {"argmax", c.argmax},
                         {"horizon", c.horizon},
                         {"growth_ratio", number(c.growth_ratio)},
                         {"loglog_slope", number(c.loglog_slope)},
                         {"trend", to_string(c.trend)},
                         {"verdict", c.verdict()}}}};
  return r;
}

}  // namespace morrad::cli
