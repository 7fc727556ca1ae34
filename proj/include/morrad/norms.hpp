#ifndef MORRAD_NORMS_HPP_
#define MORRAD_NORMS_HPP_

#include <span>
#include <string>
#include <vector>

#include "morrad/check.hpp"
#include "morrad/stepfn.hpp"
#include "morrad/weight.hpp"

namespace morrad {

inline constexpr int kDefaultGridScanCap = 13;

enum class EnclosureMethod { Exact, GridFactor, Lemma1Factor };

const char* to_string(EnclosureMethod method);

// Certified bracket lower <= ||f|| <= upper. The witness interval attains
// `lower` exactly.
struct NormEnclosure {
  double lower = 0.0;
  double upper = 0.0;
  GridInterval witness;
  EnclosureMethod method = EnclosureMethod::Exact;
};

// w(|I|) (mean of |f|^p over I)^{1/p}.
double interval_functional(const StepFunction& f, double p, const Weight& w,
                           const GridInterval& interval);

// Supremum over dyadic intervals. Levels finer than the step function add
// nothing (f is constant there and w is non-decreasing), so the scan over
// levels 0..N is the exact supremum. The witness is the first maximiser
// in (level ascending, index ascending) order.
NormEnclosure dyadic_morrey(const StepFunction& f, double p, const Weight& w);

// Full Morrey quasi-norm over all subintervals of [0,1].
//  lower: exact supremum over intervals with endpoints on the
//         2^{-(N+K)} grid (ties: shortest, then leftmost);
//  upper: min of ||f||_inf, the dyadic comparison bound 4 ||f||_{M^d} (4^{1/p} for
//         p < 1), and the adjacent-dyadic-pair bound
//         2^{1/p} max_m w(2^{-m}) (avg_{I_k} + avg_{I_{k+1}})^{1/p}.
// Throws CapError when N + K exceeds scan_cap.
NormEnclosure morrey(const StepFunction& f, double p, const Weight& w,
                     int refine_depth = 0, int scan_cap = kDefaultGridScanCap);

// The adjacent-dyadic-pair bound on its own.
double adjacent_pair_bound(const StepFunction& f, double p, const Weight& w);

// sup_{0<x<=1} w(x) (x^{-1} int_0^x |f|^p)^{1/p}.
//  lower: maximum over x on the 2^{-(N+K)} grid;
//  upper: per grid gap (x_i, x_{i+1}], w(x_{i+1}) (int_0^{x_{i+1}}|f|^p / x_i)^{1/p},
//         capped by ||f||_inf.
NormEnclosure kkl_norm(const StepFunction& f, double p, const Weight& w,
                       int refine_depth = 0);

// kkl_norm of the non-increasing rearrangement.
NormEnclosure marcinkiewicz_norm(const StepFunction& f, double p,
                                 const Weight& w, int refine_depth = 0);

struct EmbeddingReport {
  double sup_abs = 0.0;
  NormEnclosure marcinkiewicz;
  NormEnclosure morrey;
  NormEnclosure kkl;
  double lp = 0.0;
  CheckLog checks;
};

// L_inf >= Marcinkiewicz >= Morrey >= KKL >= L_p, each checked on the
// lower ends of the enclosures at a shared grid.
EmbeddingReport embedding_report(const StepFunction& f, double p,
                                 const Weight& w, int refine_depth = 0,
                                 double tol = 1e-12);

// Morrey grid lower bound is non-decreasing in p for p0 <= p1.
CheckResult p_monotonicity_check(const StepFunction& f, double p0, double p1,
                                 const Weight& w, int refine_depth = 0,
                                 double tol = 1e-12);

// int_0^1 |g| |h| dt, a lower bound for the Koethe-dual norm of g once h is
// in the unit ball of the dyadic space. Throws DomainError carrying the
// norm when ||h||_{M^d_{p,w}} > 1 + 1e-9.
double dual_pairing_lower(const StepFunction& g, const StepFunction& test_fn,
                          const Weight& w, double p = 1.0);

// Exact two-sided bounds for the dyadic norm of a Rademacher sum
// f = sum a_k r_k, materialised at resolution n:
//   lower  max(||f||_p, c_p max_m w(2^{-m}) sum_{k<=m} |a_k|)
//   upper  C_p max_{0<=m<=n} w(2^{-m}) (sum_{k<=m} |a_k| + ||sum_{k>m} a_k r_k||_p)
// with c_p = C_p = 1 for p >= 1. For p < 1, c_p = 2^{1-1/p} (the mean of
// |A + T|^p over a symmetric T can drop to 2^{p-1} |A|^p) and
// C_p = 2^{1/p-1} (quasi-triangle constant). At p = 2 also
// Phi/2 <= dyadic <= Phi.
struct SandwichCheck {
  double dyadic = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double phi_total = 0.0;
  double lp = 0.0;
  CheckLog checks;
};
SandwichCheck rademacher_sandwich(std::span<const double> a, double p,
                                const Weight& w, double rel_tol = 1e-9);

}  // namespace morrad

#endif  // MORRAD_NORMS_HPP_
