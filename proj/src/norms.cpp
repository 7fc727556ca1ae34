#include "morrad/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "morrad/error.hpp"
#include "morrad/parallel.hpp"
#include "morrad/rademacher.hpp"
#include "morrad/summation.hpp"

namespace morrad {
namespace {

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

// w(units * 2^{-resolution}); dyadic lengths go through at_dyadic so that
// every evaluator sees bit-identical weights for the same interval.
double weight_at_length(const Weight& w, std::int64_t units, int resolution) {
  if (is_power_of_two(units)) {
    int log2_units = 0;
    while ((std::int64_t{1} << log2_units) < units) ++log2_units;
    return w.at_dyadic(resolution - log2_units);
  }
  return w.eval(std::ldexp(static_cast<double>(units), -resolution));
}

double root(double x, double p) {
  if (x <= 0.0) return 0.0;
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

void check_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p must be positive");
}

constexpr double kExactSlack = 4.0 * std::numeric_limits<double>::epsilon();

void settle(NormEnclosure& e, double upper, EnclosureMethod bound_method) {
  if (upper <= e.lower * (1.0 + kExactSlack)) {
    e.upper = e.lower;
    e.method = EnclosureMethod::Exact;
  } else {
    e.upper = upper;
    e.method = bound_method;
  }
}

std::string describe(const GridInterval& I) {
  std::ostringstream os;
  os << "[" << I.left << "," << I.right << "]*2^-" << I.resolution;
  return os.str();
}

}  // namespace

const char* to_string(EnclosureMethod method) {
  switch (method) {
    case EnclosureMethod::Exact:
      return "exact";
    case EnclosureMethod::GridFactor:
      return "grid+factor";
    case EnclosureMethod::Lemma1Factor:
      return "lemma1-factor";
  }
  return "exact";
}

double interval_functional(const StepFunction& f, double p, const Weight& w,
                           const GridInterval& interval) {
  check_p(p);
  interval.check();
  return weight_at_length(w, interval.right - interval.left, interval.resolution) *
         root(f.average_p(p, interval), p);
}

NormEnclosure dyadic_morrey(const StepFunction& f, double p, const Weight& w) {
  check_p(p);
  const int N = f.resolution();
  const std::span<const double> P = f.prefix(p);
  NormEnclosure e;
  e.lower = -1.0;
  for (int m = 0; m <= N; ++m) {
    const std::size_t block = std::size_t{1} << (N - m);
    const std::size_t count = std::size_t{1} << m;
    double best_sum = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const double s = P[(k + 1) * block] - P[k * block];
      if (s > best_sum) {
        best_sum = s;
        best_k = k;
      }
    }
    const double value =
        w.at_dyadic(m) * root(best_sum / static_cast<double>(block), p);
    if (value > e.lower) {
      e.lower = value;
      e.witness = GridInterval::dyadic(m, static_cast<std::int64_t>(best_k));
    }
  }
  e.upper = e.lower;
  e.method = EnclosureMethod::Exact;
  return e;
}

double adjacent_pair_bound(const StepFunction& f, double p, const Weight& w) {
  check_p(p);
  const int N = f.resolution();
  const std::span<const double> P = f.prefix(p);
  const double factor = std::exp2(1.0 / p);
  // Lengths in (1/2, 1]: the whole interval is the only cover.
  double bound = factor * root(P.back() / static_cast<double>(f.size()), p);
  for (int m = 1; m <= N; ++m) {
    const std::size_t block = std::size_t{1} << (N - m);
    const std::size_t count = std::size_t{1} << m;
    double best = 0.0;
    for (std::size_t k = 0; k + 1 < count; ++k) {
      const double s = P[(k + 2) * block] - P[k * block];
      best = std::max(best, s);
    }
    bound = std::max(bound, factor * w.at_dyadic(m) *
                                root(best / static_cast<double>(block), p));
  }
  return bound;
}

NormEnclosure morrey(const StepFunction& f, double p, const Weight& w,
                     int refine_depth, int scan_cap) {
  check_p(p);
  if (refine_depth < 0) throw DomainError("refine depth must be >= 0");
  const int N = f.resolution();
  const int R = N + refine_depth;
  if (R > scan_cap) {
    const int suggested = std::max(0, scan_cap - N);
    std::string msg = "Morrey grid scan at resolution " + std::to_string(R) +
                      " exceeds the cap " + std::to_string(scan_cap);
    if (N <= scan_cap) {
      msg += "; use refine depth <= " + std::to_string(suggested);
    } else {
      msg += "; the step function itself is finer than the cap";
    }
    throw CapError(msg);
  }

  // Prefix sums at the refined grid, in units of 2^{-R}: f is constant on
  // each coarse cell, so interpolation inside a cell is exact.
  const std::span<const double> P = f.prefix(p);
  const int K = refine_depth;
  const std::int64_t cells = std::int64_t{1} << R;
  const std::int64_t width = std::int64_t{1} << K;
  std::vector<double> PR(static_cast<std::size_t>(cells) + 1);
  for (std::int64_t i = 0; i <= cells; ++i) {
    const std::int64_t cell = i >> K;
    const std::int64_t frac = i & (width - 1);
    double v = P[cell] * static_cast<double>(width);
    if (frac != 0) {
      const double a = P[cell + 1] - P[cell];
      v += static_cast<double>(frac) * a;
    }
    PR[static_cast<std::size_t>(i)] = v;
  }

  std::vector<double> best_sum(static_cast<std::size_t>(cells) + 1, -1.0);
  std::vector<std::int64_t> best_left(static_cast<std::size_t>(cells) + 1, 0);
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::int64_t>(64, cells));
  parallel_chunks(chunks, [&](std::size_t c) {
    for (std::int64_t len = 1 + static_cast<std::int64_t>(c); len <= cells;
         len += static_cast<std::int64_t>(chunks)) {
      double best = -1.0;
      std::int64_t arg = 0;
      for (std::int64_t i = 0; i + len <= cells; ++i) {
        const double s = PR[i + len] - PR[i];
        if (s > best) {
          best = s;
          arg = i;
        }
      }
      best_sum[len] = best;
      best_left[len] = arg;
    }
  });

  NormEnclosure e;
  e.lower = -1.0;
  for (std::int64_t len = 1; len <= cells; ++len) {
    const double value = weight_at_length(w, len, R) *
                         root(best_sum[len] / static_cast<double>(len), p);
    if (value > e.lower) {
      e.lower = value;
      e.witness = {best_left[len], best_left[len] + len, R};
    }
  }

  const double dyadic = dyadic_morrey(f, p, w).lower;
  const double lemma1 = (p >= 1.0 ? 4.0 : std::pow(4.0, 1.0 / p)) * dyadic;
  const double pair = adjacent_pair_bound(f, p, w);
  const double upper = std::min({f.sup_abs(), pair, lemma1});
  settle(e, upper,
         lemma1 < std::min(pair, f.sup_abs()) ? EnclosureMethod::Lemma1Factor
                                              : EnclosureMethod::GridFactor);
  return e;
}

NormEnclosure kkl_norm(const StepFunction& f, double p, const Weight& w,
                       int refine_depth) {
  check_p(p);
  if (refine_depth < 0) throw DomainError("refine depth must be >= 0");
  const StepFunction g =
      refine_depth == 0 ? f : refine(f, f.resolution() + refine_depth, kHardResolutionCap);
  const int R = g.resolution();
  const std::span<const double> P = g.prefix(p);
  const std::int64_t cells = static_cast<std::int64_t>(g.size());

  NormEnclosure e;
  e.lower = -1.0;
  double upper = 0.0;
  for (std::int64_t i = 1; i <= cells; ++i) {
    const double wx = weight_at_length(w, i, R);
    const double value = wx * root(P[i] / static_cast<double>(i), p);
    if (value > e.lower) {
      e.lower = value;
      e.witness = {0, i, R};
    }
    // Gap (x_{i-1}, x_i]; on the first cell f is constant so the value at
    // x_1 already dominates.
    const double gap_bound =
        i == 1 ? value : wx * root(P[i] / static_cast<double>(i - 1), p);
    upper = std::max(upper, gap_bound);
  }
  settle(e, std::min(upper, g.sup_abs()), EnclosureMethod::GridFactor);
  return e;
}

NormEnclosure marcinkiewicz_norm(const StepFunction& f, double p,
                                 const Weight& w, int refine_depth) {
  return kkl_norm(rearrange(f), p, w, refine_depth);
}

EmbeddingReport embedding_report(const StepFunction& f, double p,
                                 const Weight& w, int refine_depth, double tol) {
  EmbeddingReport r;
  r.sup_abs = f.sup_abs();
  r.marcinkiewicz = marcinkiewicz_norm(f, p, w, refine_depth);
  r.morrey = morrey(f, p, w, refine_depth);
  r.kkl = kkl_norm(f, p, w, refine_depth);
  r.lp = f.lp_norm(p);

  auto link = [&](const std::string& name, double lhs, double rhs) {
    r.checks.expect_le(name, lhs, rhs, tol * std::max(1.0, std::fabs(rhs)),
                       "lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
  };
  link("lp<=kkl", r.lp, r.kkl.lower);
  link("kkl<=morrey", r.kkl.lower, r.morrey.lower);
  link("morrey<=marcinkiewicz", r.morrey.lower, r.marcinkiewicz.lower);
  link("marcinkiewicz<=sup", r.marcinkiewicz.lower, r.sup_abs);
  return r;
}

CheckResult p_monotonicity_check(const StepFunction& f, double p0, double p1,
                                 const Weight& w, int refine_depth, double tol) {
  if (!(p0 <= p1)) throw DomainError("p-monotonicity needs p0 <= p1");
  const NormEnclosure lo = morrey(f, p0, w, refine_depth);
  const NormEnclosure hi = morrey(f, p1, w, refine_depth);
  CheckLog log;
  log.expect_le("p-monotonicity", lo.lower, hi.lower,
                tol * std::max(1.0, hi.lower),
                "p0 witness " + describe(lo.witness) + ", p1 witness " +
                    describe(hi.witness));
  return log.results().front();
}

double dual_pairing_lower(const StepFunction& g, const StepFunction& test_fn,
                          const Weight& w, double p) {
  const double norm = dyadic_morrey(test_fn, p, w).lower;
  if (norm > 1.0 + 1e-9) {
    std::ostringstream os;
    os.precision(17);
    os << "test function is not in the unit ball: ||h||_{M^d} = " << norm;
    throw DomainError(os.str());
  }
  const int R = std::max(g.resolution(), test_fn.resolution());
  const int sg = R - g.resolution();
  const int sh = R - test_fn.resolution();
  const std::size_t cells = std::size_t{1} << R;
  CompensatedSum acc;
  for (std::size_t i = 0; i < cells; ++i) {
    acc.add(std::fabs(g[i >> sg]) * std::fabs(test_fn[i >> sh]));
  }
  return std::ldexp(acc.value(), -R);
}

SandwichCheck rademacher_sandwich(std::span<const double> a, double p,
                                const Weight& w, double rel_tol) {
  check_p(p);
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("empty coefficient vector");
  SandwichCheck t;
  const StepFunction f = materialize(a, static_cast<int>(n), kHardResolutionCap);
  t.dyadic = dyadic_morrey(f, p, w).lower;
  t.lp = exact_lp(a, p, kHardEnumerationCap);
  const PhiValue ph = phi(a, w);
  t.phi_total = ph.total;

  const double c_low = p >= 1.0 ? 1.0 : std::exp2(1.0 - 1.0 / p);
  const double c_up = p >= 1.0 ? 1.0 : std::exp2(1.0 / p - 1.0);
  CompensatedSum head;
  double lower_sum = 0.0;
  double upper = w.at_dyadic(0) * t.lp;  // m = 0: the whole interval
  for (std::size_t m = 1; m <= n; ++m) {
    head.add(std::fabs(a[m - 1]));
    const double wm = w.at_dyadic(static_cast<std::int64_t>(m));
    lower_sum = std::max(lower_sum, wm * head.value());
    const double tail = exact_lp(a.subspan(m), p, kHardEnumerationCap);
    upper = std::max(upper, wm * (head.value() + tail));
  }
  t.lower = std::max(t.lp, c_low * lower_sum);
  t.upper = c_up * upper;

  const double scale = rel_tol * std::max(1.0, t.dyadic);
  std::ostringstream where;
  where.precision(17);
  where << "n=" << n << " p=" << p << " dyadic=" << t.dyadic;
  t.checks.expect_le("sandwich-lower-lp", t.lp, t.dyadic, scale, where.str());
  t.checks.expect_le("sandwich-lower-sum", c_low * lower_sum, t.dyadic, scale, where.str());
  t.checks.expect_le("sandwich-upper", t.dyadic, t.upper, scale, where.str());
  if (p == 2.0) {
    t.checks.expect_le("p2-sandwich-lower", 0.5 * t.phi_total, t.dyadic, scale, where.str());
    t.checks.expect_le("p2-sandwich-upper", t.dyadic, t.phi_total, scale, where.str());
  }
  return t;
}

}  // namespace morrad
