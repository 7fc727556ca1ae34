#ifndef MORRAD_RADEMACHER_HPP_
#define MORRAD_RADEMACHER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "morrad/stepfn.hpp"
#include "morrad/weight.hpp"

namespace morrad {

inline constexpr int kDefaultEnumerationCap = 22;
inline constexpr int kHardEnumerationCap = 28;

// Coefficients (a_1, ..., a_n), n >= 1, of a finite Rademacher sum.
class CoefficientVector {
 public:
  explicit CoefficientVector(std::vector<double> a);

  // "1,-0.5,2"
  static CoefficientVector parse_inline(const std::string& text);
  // Single-column CSV; blank lines and '#' comments are skipped, as is a
  // non-numeric first line.
  static CoefficientVector load_csv(const std::string& path);

  std::size_t size() const { return a_.size(); }
  std::span<const double> values() const { return a_; }
  double operator[](std::size_t i) const { return a_[i]; }
  operator std::span<const double>() const { return a_; }

  double l2_norm() const;

 private:
  std::vector<double> a_;
};

// r_k at resolution N: +1 on even-indexed blocks of 2^{N-k} cells, -1 on
// odd ones.
StepFunction rademacher(int k, int resolution);

// sum_k a_k r_k at resolution N >= n, exact per cell.
StepFunction materialize(std::span<const double> a, int resolution,
                         int cap = kDefaultResolutionCap);

// (2^{-n} sum_{eps in {+-1}^n} |sum_k a_k eps_k|^p)^{1/p} by Gray-code
// enumeration. The empty sum has norm 0. The pattern space is split into
// a fixed number of chunks whose compensated partial sums are combined in
// chunk order, so the result does not depend on the thread budget.
double exact_lp(std::span<const double> a, double p,
                int cap = kDefaultEnumerationCap);

// ||a||_2 plus the supremum part of the comparison functional. For phi the
// supremum part is sup_m w(2^{-m}) sum_{k<=m} |a_k|; phi_star and phi_K
// store their own supremum part in the same field.
struct PhiValue {
  double l2_part = 0.0;
  double w_part = 0.0;
  std::int64_t argmax_m = 1;
  double total = 0.0;
};

// Supremum over 1 <= m <= n; larger m cannot do better because w is
// non-decreasing and the partial sums stop growing. Ties go to the
// smallest m.
PhiValue phi(std::span<const double> a, const Weight& w);

// l2 + sup_m m^{-1/q} sum_{k<=m} a*_k, with a* the non-increasing
// rearrangement of |a_k|.
PhiValue phi_star(std::span<const double> a, double q);

// l2 + sup_m m^{-1/q} |sum_{k<=m} a_k|.
PhiValue phi_K(std::span<const double> a, double q);

// Piecewise-constant coefficient sequence: value on indices
// first .. first+count-1 (1-based); indices not covered are zero. Used
// for block systems whose index range is far beyond what a dense vector
// can hold.
struct CoefficientRun {
  std::int64_t first = 1;
  std::int64_t count = 1;
  double value = 0.0;

  std::int64_t last() const { return first + count - 1; }
};

class RunCoefficients {
 public:
  RunCoefficients() = default;
  // Runs must be non-empty, sorted and non-overlapping.
  explicit RunCoefficients(std::vector<CoefficientRun> runs);

  const std::vector<CoefficientRun>& runs() const { return runs_; }
  std::int64_t last_index() const;
  double l2_norm() const;
  std::vector<double> to_dense() const;

 private:
  std::vector<CoefficientRun> runs_;
};

// phi for a run-length sequence. Inside a run the supremum of
// w(2^{-m}) (A + B (m - first + 1)) is found by branch and bound, so the
// value matches the dense evaluation to within a relative 1e-13.
PhiValue phi(const RunCoefficients& a, const Weight& w);

// max_{1<=d<=count} w(2^{-(first+d-1)}) (offset + slope d) with
// offset, slope >= 0, by branch and bound. Returns the value and the
// maximising d.
struct LinearWeightedMax {
  double value = 0.0;
  std::int64_t argmax = 1;
  std::int64_t evaluations = 0;
};
LinearWeightedMax max_weighted_linear(const Weight& w, std::int64_t first,
                                      std::int64_t count, double offset,
                                      double slope);

}  // namespace morrad

#endif  // MORRAD_RADEMACHER_HPP_
