#include "morrad/theorem3.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "morrad/error.hpp"
#include "morrad/norms.hpp"

namespace morrad {
namespace {

using boost::multiprecision::cpp_int;
using Float50 = boost::multiprecision::cpp_bin_float_50;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// x * 2^{-pow2} rounded to double.
double ratio_to_double(const cpp_int& x, std::int64_t pow2) {
  if (x == 0) return 0.0;
  const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(x)) + 1;
  const std::int64_t shift = std::max<std::int64_t>(0, bits - 64);
  const cpp_int top = x >> static_cast<unsigned>(shift);
  return std::ldexp(static_cast<double>(top.convert_to<std::uint64_t>()),
                    static_cast<int>(shift - pow2));
}

// C(2m, m-k) for k = 0..j.
std::vector<cpp_int> window_binomials(std::int64_t m, std::int64_t j) {
  cpp_int c = 1;
  for (std::int64_t i = 1; i <= m; ++i) {
    c *= (m + i);
    c /= i;
  }
  std::vector<cpp_int> out{c};
  for (std::int64_t k = 1; k <= j; ++k) {
    c *= (m - k + 1);
    c /= (m + k);
    out.push_back(c);
  }
  return out;
}

// C(2m, m) 4^{-m} from the asymptotic series; its truncation error is
// O(m^-7) relative, below double resolution once m exceeds a few hundred.
double central_scaled_asymptotic(std::int64_t m) {
  const double x = static_cast<double>(m);
  const double x3 = x * x * x;
  const double log_corr = -1.0 / (8.0 * x) + 1.0 / (192.0 * x3) - 1.0 / (640.0 * x3 * x * x);
  return std::exp(log_corr) / std::sqrt(std::numbers::pi * x);
}

struct FloatSums {
  double measure_def = 0.0, measure_alt = 0.0, sigma_def = 0.0, sigma_paper = 0.0;
};

FloatSums float_route(std::int64_t m, std::int64_t j) {
  FloatSums s;
  long double term = central_scaled_asymptotic(m);  // C(2m, m-k) 4^{-m}
  long double mdef = 0, malt = 0, sdef = 0, spap = 0;
  for (std::int64_t k = 0; k <= j; ++k) {
    if (k > 0) {
      term *= static_cast<long double>(m - k + 1) / static_cast<long double>(m + k);
    }
    malt += term;
    spap += 2.0L * static_cast<long double>(k) * term;
    if (2 * k <= j) {
      mdef += term;
      sdef += 2.0L * static_cast<long double>(k) * term;
    }
  }
  s.measure_def = static_cast<double>(mdef);
  s.measure_alt = static_cast<double>(malt);
  s.sigma_def = static_cast<double>(sdef);
  s.sigma_paper = static_cast<double>(spap);
  return s;
}

Trend classify(double slope) {
  if (slope > 0.05) return Trend::Growing;
  if (slope < -0.05) return Trend::Decaying;
  return Trend::Bounded;
}

// Log-log slope of y against m between the row at 3/4 of the table and the
// last row.
Trend tail_trend(const std::vector<LowerBoundRow>& rows, double LowerBoundRow::*field) {
  if (rows.size() < 2) return Trend::Bounded;
  const std::size_t a = std::min(rows.size() - 2, (3 * rows.size()) / 4);
  const LowerBoundRow& r0 = rows[a];
  const LowerBoundRow& r1 = rows.back();
  const double y0 = r0.*field;
  const double y1 = r1.*field;
  if (!(y0 > 0.0) || !(y1 > 0.0)) return Trend::Decaying;
  return classify(std::log(y1 / y0) /
                  std::log(static_cast<double>(r1.m) / static_cast<double>(r0.m)));
}

}  // namespace

const char* to_string(EmVariant variant) {
  return variant == EmVariant::Def ? "def" : "alt";
}

EmVariant parse_variant(const std::string& text) {
  if (text == "def") return EmVariant::Def;
  if (text == "alt") return EmVariant::Alt;
  throw UsageError("variant must be 'def' or 'alt', got '" + text + "'");
}

std::int64_t j_of(std::int64_t m) {
  if (m >= 2 && m % 2 == 0) {
    const auto j = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(m / 2))));
    if (j >= 1 && 2 * j * j == m) return j;
  }
  throw DomainError("m = " + std::to_string(m) + " is not of the form 2 j^2");
}

EmReport e_report(std::int64_t m) {
  EmReport r;
  r.m = m;
  r.j = j_of(m);
  const std::int64_t j = r.j;
  r.exact = j <= kExactMaxJ;

  if (r.exact) {
    const std::vector<cpp_int> c = window_binomials(m, j);
    cpp_int count_def = 0, count_alt = 0, sigma_def = 0, sigma_paper = 0;
    for (std::int64_t k = 0; k <= j; ++k) {
      count_alt += c[k];
      sigma_paper += 2 * k * c[k];
      if (2 * k <= j) {
        count_def += c[k];
        sigma_def += 2 * k * c[k];
      }
    }
    r.count_def = count_def.str();
    r.count_alt = count_alt.str();
    r.sigma_def = sigma_def.str();
    r.sigma_paper = sigma_paper.str();
    r.measure_def = ratio_to_double(count_def, 2 * m);
    r.measure_alt = ratio_to_double(count_alt, 2 * m);
    r.sigma_def_scaled = ratio_to_double(sigma_def, 2 * m);
    r.sigma_paper_scaled = ratio_to_double(sigma_paper, 2 * m);
    r.checks.expect("sigma-order", sigma_def <= sigma_paper, 0.0,
                    "sigma_def " + r.sigma_def + ", sigma_paper " + r.sigma_paper);

    if (2 * m <= kEnumerationBits) {
      std::uint64_t e_count_def = 0, e_count_alt = 0, e_sigma_def = 0, e_sigma_paper = 0;
      const std::uint64_t patterns = std::uint64_t{1} << (2 * m);
      for (std::uint64_t i = 0; i < patterns; ++i) {
        const std::int64_t S = 2 * m - 2 * std::popcount(i);
        if (S < 0) continue;
        if (S <= j) {
          ++e_count_def;
          e_sigma_def += static_cast<std::uint64_t>(S);
        }
        if (S <= 2 * j) {
          ++e_count_alt;
          e_sigma_paper += static_cast<std::uint64_t>(S);
        }
      }
      r.enumerated = true;
      r.enumeration_agrees = count_def == e_count_def && count_alt == e_count_alt &&
                             sigma_def == e_sigma_def && sigma_paper == e_sigma_paper;
      r.checks.expect("enumeration", r.enumeration_agrees, 0.0,
                      "enumerated counts " + std::to_string(e_count_def) + "/" +
                          std::to_string(e_count_alt) + ", sigmas " +
                          std::to_string(e_sigma_def) + "/" + std::to_string(e_sigma_paper));
    }

    if (m >= 128) {
      // The floating route used above kExactMaxJ must agree where both run.
      const FloatSums f = float_route(m, j);
      auto agree = [&](double a, double b, const char* what) {
        const double err = std::fabs(a - b);
        const double tol = 1e-12 * std::fabs(b);
        r.checks.expect("float-route", err <= tol, tol - err,
                        std::string(what) + ": float " + fmt(a) + ", exact " + fmt(b));
      };
      agree(f.measure_def, r.measure_def, "measure_def");
      agree(f.measure_alt, r.measure_alt, "measure_alt");
      agree(f.sigma_def, r.sigma_def_scaled, "sigma_def");
      agree(f.sigma_paper, r.sigma_paper_scaled, "sigma_paper");
    }
  } else {
    const FloatSums f = float_route(m, j);
    r.measure_def = f.measure_def;
    r.measure_alt = f.measure_alt;
    r.sigma_def_scaled = f.sigma_def;
    r.sigma_paper_scaled = f.sigma_paper;
    r.checks.expect_le("sigma-order", r.sigma_def_scaled, r.sigma_paper_scaled);
  }

  r.checks.expect_le("measure-order", r.measure_def, r.measure_alt);
  r.checks.expect("measure-range", r.measure_def > 0.0 && r.measure_alt < 1.0, 0.0,
                  "measures " + fmt(r.measure_def) + ", " + fmt(r.measure_alt));
  return r;
}

StepFunction em_indicator(std::int64_t m, EmVariant variant) {
  const std::int64_t j = j_of(m);
  if (2 * m > kEnumerationBits) {
    throw CapError("E_m indicator needs resolution 2m = " + std::to_string(2 * m) +
                   " > " + std::to_string(kEnumerationBits));
  }
  const std::int64_t top = variant == EmVariant::Def ? j : 2 * j;
  const std::size_t cells = std::size_t{1} << (2 * m);
  std::vector<double> v(cells, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    const std::int64_t S = 2 * m - 2 * std::popcount(i);
    if (S >= 0 && S <= top) v[i] = 1.0;
  }
  return StepFunction::from_values(std::move(v), static_cast<int>(2 * m), kHardResolutionCap);
}

FmCheck f_m_check(std::int64_t m, const Weight& w, EmVariant variant) {
  FmCheck out;
  out.m = m;
  const StepFunction chi = em_indicator(m, variant);
  out.measure = chi.integral_p(1.0, GridInterval::whole());
  const double scale = 1.0 / w.eval(out.measure);
  std::vector<double> v(chi.values().begin(), chi.values().end());
  for (double& x : v) x *= scale;
  out.testfn = StepFunction::from_values(std::move(v), chi.resolution(), kHardResolutionCap);
  out.norm = dyadic_morrey(out.testfn, 1.0, w).lower;
  out.passed = out.norm <= 1.0 + 1e-9;
  return out;
}

CheckLog ratio_bound_check(std::int64_t m) {
  const std::int64_t j = j_of(m);
  const std::vector<cpp_int> c = window_binomials(m, j);
  const Float50 central(c[0]);
  const Float50 M(m);
  CheckLog log;
  for (std::int64_t k = 1; k <= j; ++k) {
    const Float50 K(k);
    const Float50 ratio = Float50(c[k]) / central;
    const Float50 middle = M / (M + K) * exp(-K * (K - 1) / M) *
                           exp(-(K - 1) * (K - 1) * K * K / (2 * M * M * M));
    const Float50 final_bound = exp(-K * K / M - 1 / M) / 2;
    const std::string where = "m = " + std::to_string(m) + ", k = " + std::to_string(k) +
                              ", ratio = " + fmt(ratio.convert_to<double>());
    // Equality holds at k = 1; allow for 50-digit rounding.
    const Float50 slack = ratio - middle * (1 - Float50(1e-40));
    log.expect("ratio-vs-product", slack >= 0, slack.convert_to<double>(), where);
    log.expect("product-vs-exponential", middle >= final_bound,
               (middle - final_bound).convert_to<double>(), where);
    log.expect("ratio-bound", ratio >= final_bound, (ratio - final_bound).convert_to<double>(),
               where);
  }
  return log;
}

double ineq28_phi(double t) {
  return std::log1p(-t) - std::log1p(t) + 2.0 * t + 2.0 * t * t * t;
}

CheckLog ineq28_check(std::int64_t points) {
  if (points < 2) throw DomainError("need at least two grid points");
  CheckLog log;
  for (std::int64_t i = 0; i < points; ++i) {
    const double t = 0.5 * static_cast<double>(i) / static_cast<double>(points - 1);
    const std::string where = "t = " + fmt(t);
    log.expect_le("phi-nonnegative", 0.0, ineq28_phi(t), 1e-15, where);
    const double t2 = t * t;
    const double direct = -2.0 / (1.0 - t2) + 2.0 + 6.0 * t2;
    const double factored = 2.0 * t2 * (2.0 - 3.0 * t2) / (1.0 - t2);
    const double err = std::fabs(direct - factored);
    log.expect("derivative-identity", err <= 1e-12, 1e-12 - err, where);
    log.expect_le("derivative-nonnegative", 0.0, factored, 0.0, where);
  }
  return log;
}

GaussSumReport gauss_sum_check(std::int64_t m) {
  const std::int64_t j = j_of(m);
  GaussSumReport g;
  g.m = m;
  const double M = static_cast<double>(m);
  for (std::int64_t k = 1; k <= j; ++k) {
    const double K = static_cast<double>(k);
    g.sum += std::exp(-K * K / M) * K;
  }
  g.intermediate = 0.5 * M * (1.0 - std::exp(-0.5));
  g.third = M / 3.0;
  g.exceeds_intermediate = g.sum > g.intermediate;
  g.exceeds_third = g.sum >= g.third;
  return g;
}

CheckLog psi_monotone_check(std::int64_t m, std::int64_t points) {
  const std::int64_t j = j_of(m);
  if (points < 2) throw DomainError("need at least two grid points");
  const double M = static_cast<double>(m);
  auto psi = [&](double u) { return std::exp(-u * u / M) * u; };
  CheckLog log;
  double prev = psi(0.0);
  for (std::int64_t i = 1; i < points; ++i) {
    const double u = static_cast<double>(j) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double cur = psi(u);
    const std::string where = "m = " + std::to_string(m) + ", u = " + fmt(u);
    log.expect_le("psi-increasing", prev, cur, 1e-15 * cur, where);
    log.expect_le("psi-derivative-factor", 0.0, 1.0 - 2.0 * u * u / M, 1e-15, where);
    prev = cur;
  }
  return log;
}

double stirling_value(std::int64_t m) {
  if (m < 1) throw DomainError("m must be >= 1");
  const double root = std::sqrt(std::numbers::pi * static_cast<double>(m));
  if (m <= 2 * kExactMaxJ * kExactMaxJ) {
    return ratio_to_double(window_binomials(m, 0)[0], 2 * m) * root;
  }
  return central_scaled_asymptotic(m) * root;
}

LowerBoundTable lower_bound_table(const Weight& w, std::int64_t j_max, EmVariant variant) {
  if (j_max < 1) throw DomainError("j_max must be >= 1");
  LowerBoundTable t;
  t.variant = variant;
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const std::int64_t m = 2 * j * j;
    const EmReport e = e_report(m);
    LowerBoundRow row;
    row.m = m;
    row.measure = e.measure(variant);
    row.sigma_scaled = e.sigma_scaled(variant);
    const double wm = w.eval(row.measure);
    row.bound = row.sigma_scaled / wm;
    row.normalized = row.bound / std::sqrt(2.0 * static_cast<double>(m));
    row.reference = std::sqrt(static_cast<double>(m)) / (3.0 * std::sqrt(std::numbers::pi) * wm);
    t.rows.push_back(row);
  }
  t.measure_trend = tail_trend(t.rows, &LowerBoundRow::measure);
  t.normalized_trend = tail_trend(t.rows, &LowerBoundRow::normalized);
  const LowerBoundRow& last = t.rows.back();
  if (t.measure_trend != Trend::Decaying) {
    t.warnings.push_back("|E_m| does not decay over m <= " + std::to_string(last.m) +
                         ": last value " + fmt(last.measure) + " (" +
                         std::string(to_string(t.measure_trend)) + ")");
  }
  if (t.normalized_trend != Trend::Growing) {
    t.warnings.push_back("normalized lower bound is " +
                         std::string(to_string(t.normalized_trend)) + " up to m = " +
                         std::to_string(last.m) + " (last value " + fmt(last.normalized) +
                         "); no growth is visible through this route");
  }
  return t;
}

}  // namespace morrad
