#include "morrad/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "morrad/error.hpp"
#include "morrad/parallel.hpp"
#include "morrad/random.hpp"

namespace morrad {
namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void expect_close(CheckLog& log, const std::string& name, double value,
                  double expected, double rel_tol, const std::string& where) {
  const double err = std::fabs(value - expected);
  const double tol = rel_tol * std::max(1.0, std::fabs(expected));
  log.expect(name, err <= tol, tol - err,
             where + ": got " + fmt(value) + ", expected " + fmt(expected));
}

// v(2^{-j}) = w(2^{-j}) 2^{j/p}.
double v_dyadic(const Weight& w, double p, int j) {
  return w.at_dyadic(j) * std::exp2(static_cast<double>(j) / p);
}

double sup_abs(std::span<const double> beta) {
  double m = 0.0;
  for (double b : beta) m = std::max(m, std::fabs(b));
  return m;
}

RatioReport ratio_batch(const std::vector<std::vector<double>>& betas,
                        const std::function<double(std::span<const double>)>& functional,
                        double proof_lower, double proof_upper,
                        const std::string& tag) {
  std::vector<double> values(betas.size());
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(64, betas.size()));
  parallel_chunks(chunks, [&](std::size_t c) {
    for (std::size_t i = c; i < betas.size(); i += chunks) values[i] = functional(betas[i]);
  });

  RatioReport r;
  r.proof_lower = proof_lower;
  r.proof_upper = proof_upper;
  bool any = false;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double norm = sup_abs(betas[i]);
    if (norm == 0.0) {
      r.checks.expect(tag + "-zero-beta", values[i] == 0.0, -values[i],
                      "beta #" + std::to_string(i) + " is zero but Phi = " + fmt(values[i]));
      continue;
    }
    const double ratio = values[i] / norm;
    ++r.samples;
    if (!any || ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.argmin = i;
    }
    if (!any || ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.argmax = i;
    }
    any = true;
    const std::string where = "beta #" + std::to_string(i) + ", ratio " + fmt(ratio);
    r.checks.expect_le(tag + "-lower", proof_lower, ratio, 1e-12, where);
    r.checks.expect_le(tag + "-upper", ratio, proof_upper, 1e-12, where);
  }
  return r;
}

}  // namespace

SeparatingWitness prop1_witness(double p, const Weight& w, int levels,
                                int resolution_cap) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p must be positive");
  if (levels < 1) throw DomainError("the witness needs at least one level");
  if (resolution_cap > kHardResolutionCap) {
    throw CapError("resolution cap exceeds the hard limit " +
                   std::to_string(kHardResolutionCap));
  }

  SeparatingWitness s;
  s.p = p;
  s.weight = w;
  s.levels = levels;

  double prev = w.at_dyadic(0);
  int j = 0;
  for (int k = 1; k <= levels; ++k) {
    double vj = 0.0;
    do {
      ++j;
      if (j > resolution_cap) {
        throw HypothesisError(
            "v(t) = w(t) t^{-1/p} does not double below t = 2^-" +
            std::to_string(resolution_cap) + " (level " + std::to_string(k) +
            "); the witness needs v(t) -> infinity as t -> 0");
      }
      const double before = v_dyadic(w, p, j - 1);
      vj = v_dyadic(w, p, j);
      s.checks.expect_le("v-nondecreasing", before, vj, 1e-12 * before,
                         "at t = 2^-" + std::to_string(j));
    } while (vj < 2.0 * prev);
    s.exponents.push_back(j);
    s.v.push_back(vj);
    prev = vj;
  }

  const int R = std::max(s.exponents.back(), 1);
  const std::size_t cells = std::size_t{1} << R;
  auto cells_below = [&](int exponent) { return std::size_t{1} << (R - exponent); };
  auto mass = [&](std::size_t k) { return std::pow(s.v[k], -p / 2.0); };

  std::vector<double> g(cells, 0.0);
  for (std::size_t k = 0; k + 1 < s.v.size(); ++k) {
    const std::size_t hi = cells_below(s.exponents[k]);
    const std::size_t lo = cells_below(s.exponents[k + 1]);
    const double width = std::ldexp(static_cast<double>(hi - lo), -R);
    const double value = std::pow((mass(k) - mass(k + 1)) / width, 1.0 / p);
    std::fill(g.begin() + lo, g.begin() + hi, value);
  }
  {
    const std::size_t hi = cells_below(s.exponents.back());
    const double width = std::ldexp(static_cast<double>(hi), -R);
    std::fill(g.begin(), g.begin() + hi,
              std::pow(mass(s.v.size() - 1) / width, 1.0 / p));
  }
  std::vector<double> f(cells, 0.0);
  std::copy(g.begin(), g.begin() + cells / 2, f.begin() + cells / 2);
  s.g = StepFunction::from_values(std::move(g), R, resolution_cap);
  s.f = StepFunction::from_values(std::move(f), R, resolution_cap);

  const std::int64_t half = std::int64_t{1} << (R - 1);
  for (std::size_t k = 0; k < s.v.size(); ++k) {
    const auto len = static_cast<std::int64_t>(cells_below(s.exponents[k]));
    const double tail = s.g.integral_p(p, GridInterval{0, len, R});
    s.tail_integrals.push_back(tail);
    const std::string where = "k = " + std::to_string(k + 1);
    expect_close(s.checks, "telescoping", tail, mass(k), 1e-12, where);

    const double value = interval_functional(s.f, p, w, GridInterval{half, half + len, R});
    s.witness_values.push_back(value);
    expect_close(s.checks, "witness-value", value, std::sqrt(s.v[k]), 1e-12, where);
    if (k > 0) {
      s.checks.expect("witness-increasing", value > s.witness_values[k - 1],
                      value - s.witness_values[k - 1], where);
    }
  }

  s.kkl = kkl_norm(s.f, p, w);
  const double c0 = validate(w, R).doubling_constant;
  s.checks.expect("kkl-finite", std::isfinite(s.kkl.upper) && s.kkl.lower > 0.0, 0.0,
                  "lower " + fmt(s.kkl.lower) + ", upper " + fmt(s.kkl.upper));
  s.checks.expect_le("kkl-enclosure-width", s.kkl.upper, 2.0 * c0 * s.kkl.lower,
                     1e-12, "upper/lower = " + fmt(s.kkl.upper / s.kkl.lower));
  return s;
}

RunCoefficients BlockSystem::block(std::size_t k) const {
  if (k < 1 || k > block_count()) throw DomainError("block number out of range");
  return RunCoefficients({CoefficientRun{block_first(k), block_length(k), coefficients[k - 1]}});
}

RunCoefficients BlockSystem::combination(std::span<const double> beta) const {
  if (beta.size() > selected.size()) {
    throw DomainError("beta has " + std::to_string(beta.size()) +
                      " entries but only " + std::to_string(selected.size()) +
                      " blocks are selected");
  }
  std::vector<CoefficientRun> runs;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const std::size_t k = selected[i];
    runs.push_back({block_first(k), block_length(k), beta[i] * coefficients[k - 1]});
  }
  return RunCoefficients(std::move(runs));
}

std::vector<std::int64_t> prop2_indices(const Weight& w, int blocks,
                                        std::int64_t scan_cap) {
  if (blocks < 1) throw DomainError("need at least one block");
  std::vector<std::int64_t> out;
  std::int64_t base = 0;
  for (int k = 1; k <= blocks; ++k) {
    const double target = std::ldexp(1.0, k);
    auto value = [&](std::int64_t n) {
      return w.at_dyadic(n) * std::sqrt(static_cast<double>(n - base));
    };
    // Least qualifying n in [a, b], or -1.
    std::function<std::int64_t(std::int64_t, std::int64_t)> least =
        [&](std::int64_t a, std::int64_t b) -> std::int64_t {
      if (w.at_dyadic(a) * std::sqrt(static_cast<double>(b - base)) < target) return -1;
      if (b - a < 64) {
        for (std::int64_t n = a; n <= b; ++n) {
          if (value(n) >= target) return n;
        }
        return -1;
      }
      const std::int64_t mid = a + (b - a) / 2;
      const std::int64_t left = least(a, mid);
      return left >= 0 ? left : least(mid + 1, b);
    };

    std::int64_t found = -1;
    std::int64_t a = base + 1;
    std::int64_t size = 1;
    while (a <= scan_cap) {
      const std::int64_t b = std::min(scan_cap, a + size - 1);
      found = least(a, b);
      if (found >= 0) break;
      a = b + 1;
      size = std::min<std::int64_t>(size * 2, std::int64_t{1} << 40);
    }
    if (found < 0) {
      throw HypothesisError(
          "no index n <= " + std::to_string(scan_cap) + " satisfies w(2^-n) sqrt(n - " +
          std::to_string(base) + ") >= 2^" + std::to_string(k) + " for " + w.spec() +
          "; limsup w(2^-n) sqrt(n) = infinity appears to fail for this weight");
    }
    out.push_back(found);
    base = found;
  }
  return out;
}

BlockSystem prop2_blocks(const Weight& w, std::span<const std::int64_t> indices) {
  if (indices.empty()) throw DomainError("no block indices");
  BlockSystem sys;
  sys.weight = w;
  sys.indices.push_back(0);
  for (std::int64_t n : indices) {
    if (n <= sys.indices.back()) throw DomainError("block indices must increase");
    sys.indices.push_back(n);
  }
  for (std::size_t k = 1; k < sys.indices.size(); ++k) {
    const double wn = w.at_dyadic(sys.indices[k]);
    if (!(wn > 0.0)) throw DomainError("w(2^-n_k) underflows to zero");
    sys.coefficients.push_back(1.0 / (static_cast<double>(sys.block_length(k)) * wn));
    sys.selected.push_back(k);
  }

  CheckLog& log = sys.checks;
  for (std::size_t k = 1; k <= sys.block_count(); ++k) {
    const std::int64_t base = sys.indices[k - 1];
    const std::int64_t n = sys.indices[k];
    const std::int64_t d = n - base;
    const double a = sys.coefficients[k - 1];
    const double wn = w.at_dyadic(n);
    const double target = std::ldexp(1.0, static_cast<int>(k));
    const std::string where = "block " + std::to_string(k) + " (n_k = " + std::to_string(n) + ")";

    const double sel = wn * std::sqrt(static_cast<double>(d));
    log.expect_le("selection", target, sel, 0.0, where);
    log.expect_le("selection-upper", sel, 2.0 * target, 0.0, where);
    if (d > 1) {
      const double prev = w.at_dyadic(n - 1) * std::sqrt(static_cast<double>(d - 1));
      log.expect("minimality", prev < target, target - prev, where);
    }

    const RunCoefficients v = sys.block(k);
    const double l2 = v.l2_norm();
    expect_close(log, "block-l2", l2, 1.0 / (std::sqrt(static_cast<double>(d)) * wn), 1e-12, where);
    log.expect_le("block-l2-decay", l2, std::ldexp(1.0, -static_cast<int>(k)), 1e-12, where);
    expect_close(log, "w-normalization", wn * static_cast<double>(d) * a, 1.0, 1e-12, where);

    const LinearWeightedMax m = max_weighted_linear(w, base + 1, d, 0.0, a);
    log.expect_le("per-index-bound", m.value * (1.0 + 1e-13), 2.0, 0.0,
                  where + ", max at i = " + std::to_string(base + m.argmax));
  }
  return sys;
}

BlockSystem halving_subsequence(BlockSystem sys) {
  const Weight& w = sys.weight;
  sys.selected.assign(1, 1);
  for (std::size_t k = 2; k <= sys.block_count(); ++k) {
    const double last = w.at_dyadic(sys.block_last(sys.selected.back()));
    if (w.at_dyadic(sys.block_last(k)) <= 0.5 * last) sys.selected.push_back(k);
  }
  for (std::size_t i = 0; i < sys.selected.size(); ++i) {
    const std::size_t k = sys.selected[i];
    const std::string where = "u_" + std::to_string(i + 1) + " = v_" + std::to_string(k);
    if (i > 0) {
      const double before = w.at_dyadic(sys.block_last(sys.selected[i - 1]));
      const double now = w.at_dyadic(sys.block_last(k));
      sys.checks.expect_le("halving", now, 0.5 * before, 0.0, where);
    }
    sys.checks.expect_le("l2-decay", sys.block(k).l2_norm(),
                         std::ldexp(1.0, -static_cast<int>(i + 1)), 1e-12, where);
  }
  return sys;
}

RatioReport c0_certificate(const BlockSystem& sys,
                           const std::vector<std::vector<double>>& betas) {
  return ratio_batch(
      betas,
      [&](std::span<const double> beta) { return phi(sys.combination(beta), sys.weight).total; },
      1.0, 5.0, "c0");
}

std::vector<std::vector<double>> beta_batch(std::size_t length, std::size_t count,
                                            std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  if (length == 0) return out;
  std::vector<double> e1(length, 0.0);
  e1[0] = 1.0;
  std::vector<double> alternating(length);
  for (std::size_t i = 0; i < length; ++i) alternating[i] = (i % 2 == 0) ? 1.0 : -1.0;
  for (auto& fixed : {e1, std::vector<double>(length, 1.0), alternating}) {
    if (out.size() < count) out.push_back(fixed);
  }
  Rng rng(seed);
  while (out.size() < count) {
    std::vector<double> b(length);
    for (double& x : b) x = rng.uniform(-1.0, 1.0);
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<RunCoefficients> normalize_blocks(const BlockSystem& sys) {
  std::vector<RunCoefficients> out;
  for (std::size_t k : sys.selected) {
    const double scale = 1.0 / phi(sys.block(k), sys.weight).total;
    out.push_back(RunCoefficients(
        {CoefficientRun{sys.block_first(k), sys.block_length(k), scale * sys.coefficients[k - 1]}}));
  }
  return out;
}

RatioReport prop5_check(const std::vector<RunCoefficients>& blocks, const Weight& w,
                        const std::vector<std::vector<double>>& betas,
                        double normalization_tol) {
  if (blocks.empty()) throw DomainError("no blocks");
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    if (blocks[n].runs().empty()) {
      throw DomainError("block " + std::to_string(n + 1) + " is empty");
    }
    if (n > 0 && blocks[n].runs().front().first <= blocks[n - 1].last_index()) {
      throw DomainError("block " + std::to_string(n + 1) + " overlaps block " +
                        std::to_string(n));
    }
  }

  std::vector<std::string> failures;
  for (std::size_t n = 0; n + 1 < blocks.size(); ++n) {
    const std::int64_t m0 = blocks[n].runs().front().first;
    const std::int64_t m1 = blocks[n + 1].runs().front().first;
    const double w0 = w.at_dyadic(m0);
    const double w1 = w.at_dyadic(m1);
    if (w1 > 0.5 * w0 * (1.0 + 1e-12)) {
      failures.push_back("halving on block starts fails between blocks " +
                         std::to_string(n + 1) + " and " + std::to_string(n + 2) +
                         ": w(2^-" + std::to_string(m1) + ") = " + fmt(w1) +
                         " > w(2^-" + std::to_string(m0) + ")/2 = " + fmt(0.5 * w0));
    }
  }
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    const double l2 = blocks[n].l2_norm();
    const double bound = std::ldexp(1.0, -static_cast<int>(n + 1));
    if (l2 * l2 > bound * (1.0 + 1e-12)) {
      failures.push_back("square sum of block " + std::to_string(n + 1) + " is " +
                         fmt(l2 * l2) + " > 2^-" + std::to_string(n + 1));
    }
    const double norm = phi(blocks[n], w).total;
    if (std::fabs(norm - 1.0) > normalization_tol) {
      failures.push_back("block " + std::to_string(n + 1) + " has Phi = " + fmt(norm) +
                         ", expected 1");
    }
  }
  if (!failures.empty()) {
    std::string msg = "block system violates the hypotheses:";
    for (const std::string& f : failures) msg += "\n  " + f;
    throw HypothesisError(msg);
  }

  auto combine = [&](std::span<const double> beta) {
    if (beta.size() > blocks.size()) throw DomainError("beta longer than the block list");
    std::vector<CoefficientRun> runs;
    for (std::size_t n = 0; n < beta.size(); ++n) {
      for (const CoefficientRun& r : blocks[n].runs()) {
        runs.push_back({r.first, r.count, beta[n] * r.value});
      }
    }
    return phi(RunCoefficients(std::move(runs)), w).total;
  };
  return ratio_batch(betas, combine, 0.5, 4.0, "prop5");
}

}  // namespace morrad
