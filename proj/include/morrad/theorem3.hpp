#ifndef MORRAD_THEOREM3_HPP_
#define MORRAD_THEOREM3_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "morrad/check.hpp"
#include "morrad/stepfn.hpp"
#include "morrad/weight.hpp"

namespace morrad {

// Window of S = r_1 + ... + r_{2m} that defines E_m, with m = 2 j^2.
//   Def: 0 <= S <= j            (S even, S = 2m - 2 #minus)
//   Alt: 0 <= S <= 2j           (the range k = 0..j with S = 2k)
enum class EmVariant { Def, Alt };
const char* to_string(EmVariant variant);
EmVariant parse_variant(const std::string& text);

inline constexpr int kEnumerationBits = 24;
// Above this j the binomials are evaluated in floating point from an
// asymptotic central coefficient and exact ratio products.
inline constexpr std::int64_t kExactMaxJ = 70;

// m = 2 j^2 or DomainError.
std::int64_t j_of(std::int64_t m);

struct EmReport {
  std::int64_t m = 0;
  std::int64_t j = 0;
  bool exact = true;  // big-integer route
  // Pattern counts and sigma sums as decimal integers (exact route only).
  std::string count_def, count_alt, sigma_def, sigma_paper;
  double measure_def = 0.0;  // count / 4^m
  double measure_alt = 0.0;
  double sigma_def_scaled = 0.0;    // sigma / 4^m
  double sigma_paper_scaled = 0.0;
  bool enumerated = false;          // brute force over 2^{2m} patterns ran
  bool enumeration_agrees = true;
  CheckLog checks;

  double measure(EmVariant v) const { return v == EmVariant::Def ? measure_def : measure_alt; }
  double sigma_scaled(EmVariant v) const {
    return v == EmVariant::Def ? sigma_def_scaled : sigma_paper_scaled;
  }
};

// Exact binomial sums for j <= kExactMaxJ, floating point above. For
// 2m <= 24 every sign pattern is enumerated as a cross-check.
EmReport e_report(std::int64_t m);

// Indicator of E_m at resolution 2m (2m <= 24): S on cell i is
// 2m - 2 popcount(i).
StepFunction em_indicator(std::int64_t m, EmVariant variant = EmVariant::Def);

struct FmCheck {
  std::int64_t m = 0;
  double measure = 0.0;
  StepFunction testfn;  // chi_{E_m} / w(|E_m|)
  double norm = 0.0;    // dyadic Morrey norm, p = 1
  bool passed = false;
};
FmCheck f_m_check(std::int64_t m, const Weight& w, EmVariant variant = EmVariant::Def);

// C(2m, m-k)/C(2m, m) >= (m/(m+k)) e^{-k(k-1)/m} e^{-(k-1)^2 k^2/(2m^3)}
// >= e^{-k^2/m - 1/m} / 2 for 1 <= k <= j, in 50-digit arithmetic.
CheckLog ratio_bound_check(std::int64_t m);

// log((1-t)/(1+t)) + 2t + 2t^3 >= 0 on [0, 1/2] and the derivative
// identity, on `points` equally spaced abscissae including both ends.
CheckLog ineq28_check(std::int64_t points = 10001);
double ineq28_phi(double t);

struct GaussSumReport {
  std::int64_t m = 0;
  double sum = 0.0;           // sum_{k=1}^{j} e^{-k^2/m} k
  double intermediate = 0.0;  // (m/2)(1 - e^{-1/2})
  double third = 0.0;         // m/3
  bool exceeds_intermediate = false;
  bool exceeds_third = false;  // reported only
};
GaussSumReport gauss_sum_check(std::int64_t m);

// psi(u) = e^{-u^2/m} u non-decreasing on a grid over [0, j] and
// 1 - 2u^2/m >= 0 there.
CheckLog psi_monotone_check(std::int64_t m, std::int64_t points = 1001);

// C(2m, m) 4^{-m} sqrt(pi m).
double stirling_value(std::int64_t m);

struct LowerBoundRow {
  std::int64_t m = 0;
  double measure = 0.0;
  double sigma_scaled = 0.0;  // sigma 2^{-2m}
  double bound = 0.0;         // sigma 2^{-2m} / w(measure)
  double normalized = 0.0;    // bound / sqrt(2m)
  double reference = 0.0;     // sqrt(m) / (3 sqrt(pi) w(measure))
};

struct LowerBoundTable {
  EmVariant variant = EmVariant::Def;
  std::vector<LowerBoundRow> rows;
  Trend measure_trend = Trend::Bounded;
  Trend normalized_trend = Trend::Bounded;
  std::vector<std::string> warnings;
};

// Rows for m = 2 j^2, 1 <= j <= j_max. Trends compare the last quarter of
// the rows in log-log form; no limit is asserted.
LowerBoundTable lower_bound_table(const Weight& w, std::int64_t j_max,
                                  EmVariant variant = EmVariant::Def);

}  // namespace morrad

#endif  // MORRAD_THEOREM3_HPP_
