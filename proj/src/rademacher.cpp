#include "morrad/rademacher.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "morrad/error.hpp"
#include "morrad/parallel.hpp"
#include "morrad/summation.hpp"

namespace morrad {
namespace {

double abs_pow(double v, double p) {
  const double a = std::fabs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double parse_number(const std::string& cell, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
    throw UsageError("cannot parse coefficient '" + cell + "' in " + context);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

PhiValue finish(double l2, double sup_part, std::int64_t argmax) {
  PhiValue v;
  v.l2_part = l2;
  v.w_part = sup_part;
  v.argmax_m = argmax;
  v.total = l2 + sup_part;
  return v;
}

double l2_of(std::span<const double> a) {
  CompensatedSum s;
  for (double x : a) s.add(x * x);
  return std::sqrt(s.value());
}

}  // namespace

CoefficientVector::CoefficientVector(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) throw DomainError("coefficient vector needs n >= 1");
  for (double x : a_) {
    if (!std::isfinite(x)) throw DomainError("coefficient is not finite");
  }
}

CoefficientVector CoefficientVector::parse_inline(const std::string& text) {
  std::vector<double> a;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) a.push_back(parse_number(trim(cell), "'" + text + "'"));
  if (a.empty()) throw UsageError("empty coefficient list");
  return CoefficientVector(std::move(a));
}

CoefficientVector CoefficientVector::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open coefficient file '" + path + "'");
  std::vector<double> a;
  std::string line;
  bool first_line = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end != line.c_str() + line.size()) {
      if (first_line) {  // header
        first_line = false;
        continue;
      }
      throw UsageError("cannot parse coefficient '" + line + "' in " + path);
    }
    first_line = false;
    a.push_back(v);
  }
  if (a.empty()) throw UsageError("no coefficients in '" + path + "'");
  return CoefficientVector(std::move(a));
}

double CoefficientVector::l2_norm() const { return l2_of(a_); }

StepFunction rademacher(int k, int resolution) {
  if (k < 1) throw DomainError("Rademacher index k must be >= 1");
  if (resolution < k) {
    throw DomainError("r_" + std::to_string(k) + " needs resolution >= " +
                      std::to_string(k) + ", got " + std::to_string(resolution));
  }
  check_resolution(resolution, kHardResolutionCap);
  const std::size_t cells = std::size_t{1} << resolution;
  const int shift = resolution - k;
  std::vector<double> v(cells);
  for (std::size_t i = 0; i < cells; ++i) v[i] = ((i >> shift) & 1u) ? -1.0 : 1.0;
  return StepFunction::from_values(std::move(v), resolution, kHardResolutionCap);
}

StepFunction materialize(std::span<const double> a, int resolution, int cap) {
  if (static_cast<std::size_t>(resolution) < a.size()) {
    throw DomainError("materialize needs resolution >= n = " +
                      std::to_string(a.size()));
  }
  check_resolution(resolution, cap);
  // Level k splits every level-(k-1) cell into (+a_k, -a_k) halves.
  std::vector<double> v{0.0};
  for (double ak : a) {
    std::vector<double> next(v.size() * 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] + ak;
      next[2 * i + 1] = v[i] - ak;
    }
    v = std::move(next);
  }
  const std::size_t rep = std::size_t{1} << (resolution - static_cast<int>(a.size()));
  if (rep > 1) {
    std::vector<double> wide;
    wide.reserve(v.size() * rep);
    for (double x : v) wide.insert(wide.end(), rep, x);
    v = std::move(wide);
  }
  return StepFunction::from_values(std::move(v), resolution, cap);
}

double exact_lp(std::span<const double> a, double p, int cap) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p must be positive");
  if (cap > kHardEnumerationCap) {
    throw CapError("enumeration cap exceeds the hard limit " +
                   std::to_string(kHardEnumerationCap));
  }
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  if (n > static_cast<std::size_t>(cap)) {
    throw CapError("exact L_p enumeration of n=" + std::to_string(n) +
                   " coefficients exceeds the cap " + std::to_string(cap));
  }
  if (n == 1) return std::fabs(a[0]);

  // eps_1 = +1 is fixed: S and -S have the same modulus.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const std::uint64_t chunks = std::min<std::uint64_t>(64, half);
  const std::uint64_t per_chunk = half / chunks;
  std::vector<CompensatedSum> partial(chunks);

  parallel_chunks(chunks, [&](std::size_t c) {
    const std::uint64_t start = c * per_chunk;
    std::uint64_t gray = start ^ (start >> 1);
    long double s = a[0];
    for (std::size_t b = 0; b + 1 < n; ++b) {
      s += ((gray >> b) & 1u) ? -static_cast<long double>(a[b + 1])
                              : static_cast<long double>(a[b + 1]);
    }
    CompensatedSum acc;
    acc.add(abs_pow(static_cast<double>(s), p));
    for (std::uint64_t idx = start + 1; idx < start + per_chunk; ++idx) {
      const int b = std::countr_zero(idx);
      gray ^= std::uint64_t{1} << b;
      const long double step = 2.0L * static_cast<long double>(a[b + 1]);
      s += ((gray >> b) & 1u) ? -step : step;
      acc.add(abs_pow(static_cast<double>(s), p));
    }
    partial[c] = acc;
  });

  CompensatedSum total;
  for (const CompensatedSum& c : partial) total.merge(c);
  return std::pow(total.value() / static_cast<double>(half), 1.0 / p);
}

PhiValue phi(std::span<const double> a, const Weight& w) {
  CompensatedSum partial;
  double best = -1.0;
  std::int64_t argmax = 1;
  for (std::size_t m = 1; m <= a.size(); ++m) {
    partial.add(std::fabs(a[m - 1]));
    const double v = w.at_dyadic(static_cast<std::int64_t>(m)) * partial.value();
    if (v > best) {
      best = v;
      argmax = static_cast<std::int64_t>(m);
    }
  }
  return finish(l2_of(a), std::max(best, 0.0), argmax);
}

PhiValue phi_star(std::span<const double> a, double q) {
  std::vector<double> sorted(a.begin(), a.end());
  for (double& x : sorted) x = std::fabs(x);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  CompensatedSum partial;
  double best = -1.0;
  std::int64_t argmax = 1;
  for (std::size_t m = 1; m <= sorted.size(); ++m) {
    partial.add(sorted[m - 1]);
    const double v = std::pow(static_cast<double>(m), -1.0 / q) * partial.value();
    if (v > best) {
      best = v;
      argmax = static_cast<std::int64_t>(m);
    }
  }
  return finish(l2_of(a), std::max(best, 0.0), argmax);
}

PhiValue phi_K(std::span<const double> a, double q) {
  CompensatedSum partial;
  double best = -1.0;
  std::int64_t argmax = 1;
  for (std::size_t m = 1; m <= a.size(); ++m) {
    partial.add(a[m - 1]);
    const double v =
        std::pow(static_cast<double>(m), -1.0 / q) * std::fabs(partial.value());
    if (v > best) {
      best = v;
      argmax = static_cast<std::int64_t>(m);
    }
  }
  return finish(l2_of(a), std::max(best, 0.0), argmax);
}

RunCoefficients::RunCoefficients(std::vector<CoefficientRun> runs)
    : runs_(std::move(runs)) {
  std::int64_t next_free = 1;
  for (const CoefficientRun& r : runs_) {
    if (r.count < 1) throw DomainError("coefficient run must be non-empty");
    if (r.first < next_free) {
      throw DomainError("coefficient runs overlap or are unsorted at index " +
                        std::to_string(r.first));
    }
    if (!std::isfinite(r.value)) throw DomainError("coefficient is not finite");
    next_free = r.last() + 1;
  }
}

std::int64_t RunCoefficients::last_index() const {
  return runs_.empty() ? 0 : runs_.back().last();
}

double RunCoefficients::l2_norm() const {
  CompensatedSum s;
  for (const CoefficientRun& r : runs_) {
    s.add(static_cast<double>(r.count) * r.value * r.value);
  }
  return std::sqrt(s.value());
}

std::vector<double> RunCoefficients::to_dense() const {
  const std::int64_t n = last_index();
  if (n > (std::int64_t{1} << 26)) {
    throw CapError("run sequence too long to densify (" + std::to_string(n) +
                   " indices)");
  }
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (const CoefficientRun& r : runs_) {
    std::fill(out.begin() + (r.first - 1), out.begin() + r.last(), r.value);
  }
  return out;
}

LinearWeightedMax max_weighted_linear(const Weight& w, std::int64_t first,
                                      std::int64_t count, double offset,
                                      double slope) {
  if (count < 1 || first < 1) throw DomainError("empty run in weighted maximum");
  constexpr double kPruneTol = 1e-13;
  LinearWeightedMax out;
  auto h = [&](std::int64_t d) {
    ++out.evaluations;
    return w.at_dyadic(first + d - 1) * (offset + slope * static_cast<double>(d));
  };
  auto offer = [&](std::int64_t d, double v) {
    if (v > out.value || (v == out.value && d < out.argmax)) {
      out.value = v;
      out.argmax = d;
    }
  };
  out.value = h(1);
  out.argmax = 1;
  if (count == 1) return out;
  offer(count, h(count));

  // w(2^{-m}) is non-increasing in m and the linear factor non-decreasing
  // in d, so w at the left end times the factor at the right end bounds
  // the whole sub-range.
  std::vector<std::pair<std::int64_t, std::int64_t>> stack{{1, count}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (hi - lo <= 1) continue;
    const double upper =
        w.at_dyadic(first + lo - 1) * (offset + slope * static_cast<double>(hi));
    if (upper <= out.value * (1.0 + kPruneTol)) continue;
    const std::int64_t mid = lo + (hi - lo) / 2;
    offer(mid, h(mid));
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return out;
}

PhiValue phi(const RunCoefficients& a, const Weight& w) {
  CompensatedSum before;
  double best = 0.0;
  std::int64_t argmax = 1;
  bool any = false;
  for (const CoefficientRun& r : a.runs()) {
    const LinearWeightedMax m =
        max_weighted_linear(w, r.first, r.count, before.value(), std::fabs(r.value));
    const std::int64_t index = r.first + m.argmax - 1;
    if (!any || m.value > best) {
      best = m.value;
      argmax = index;
      any = true;
    }
    before.add(static_cast<double>(r.count) * std::fabs(r.value));
  }
  return finish(a.l2_norm(), best, argmax);
}

}  // namespace morrad
