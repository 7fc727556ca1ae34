#ifndef MORRAD_CONSTRUCTIONS_HPP_
#define MORRAD_CONSTRUCTIONS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "morrad/check.hpp"
#include "morrad/norms.hpp"
#include "morrad/rademacher.hpp"
#include "morrad/stepfn.hpp"
#include "morrad/weight.hpp"

namespace morrad {

// ---------------------------------------------------------------------------
// Separating witness: a function whose KKL quasi-norm is finite while its
// Morrey quasi-norm is driven up by the intervals [1/2, 1/2 + t_k].

struct SeparatingWitness {
  double p = 1.0;
  Weight weight = Weight::constant_one();
  int levels = 0;
  std::vector<int> exponents;  // t_k = 2^{-exponents[k-1]}
  std::vector<double> v;       // v(t_k) = w(t_k) t_k^{-1/p}
  StepFunction g;              // supported on (0, t_1]
  StepFunction f;              // f(t) = g(t - 1/2) on [1/2, 1], else 0
  std::vector<double> tail_integrals;    // int_0^{t_k} g^p on the grid
  std::vector<double> witness_values;    // interval functional on I_k
  NormEnclosure kkl;
  CheckLog checks;
};

// t_0 = 1 and t_k is the first 2^{-j} below t_{k-1} with
// v(2^{-j}) >= 2 v(t_{k-1}). g takes the telescoping values on
// (t_{k+1}, t_k] for k < L and puts the remaining mass v(t_L)^{-p/2} as a
// constant on (0, t_L], so int_0^{t_k} g^p = v(t_k)^{-p/2} for k <= L.
// Throws HypothesisError when v cannot double before the resolution cap.
SeparatingWitness prop1_witness(double p, const Weight& w, int levels,
                                int resolution_cap = kHardResolutionCap);

// ---------------------------------------------------------------------------
// Block systems of Rademacher functions.

inline constexpr std::int64_t kDefaultIndexScanCap = std::int64_t{1} << 40;

struct BlockSystem {
  Weight weight = Weight::constant_one();
  std::vector<std::int64_t> indices;  // n_0 = 0 < n_1 < ... < n_K
  std::vector<double> coefficients;   // a on block k stored at k-1
  std::vector<std::size_t> selected;  // 1-based block numbers j_1 < j_2 < ...
  CheckLog checks;

  std::size_t block_count() const { return coefficients.size(); }
  std::int64_t block_first(std::size_t k) const { return indices[k - 1] + 1; }
  std::int64_t block_last(std::size_t k) const { return indices[k]; }
  std::int64_t block_length(std::size_t k) const {
    return indices[k] - indices[k - 1];
  }
  // v_k as a run.
  RunCoefficients block(std::size_t k) const;
  // sum_i beta_i u_i over the selected blocks; beta may be shorter than
  // the selection (missing entries are zero).
  RunCoefficients combination(std::span<const double> beta) const;
};

// n_k = least n > n_{k-1} with w(2^{-n}) sqrt(n - n_{k-1}) >= 2^k.
// Candidate ranges [a, b] are skipped whole when w(2^{-a}) sqrt(b - n_{k-1})
// stays below 2^k, which is certified because w(2^{-n}) is non-increasing
// in n. Throws HypothesisError when no index up to scan_cap qualifies,
// i.e. limsup w(2^{-n}) sqrt(n) = infinity looks false for this weight.
std::vector<std::int64_t> prop2_indices(const Weight& w, int blocks,
                                        std::int64_t scan_cap = kDefaultIndexScanCap);

// Coefficients a = 1 / ((n_k - n_{k-1}) w(2^{-n_k})) and the block
// invariants: selection and minimality, l2 norms, w-normalisation and the
// per-index bound, evaluated for every index by branch and bound. All
// blocks are selected until halving_subsequence() runs.
BlockSystem prop2_blocks(const Weight& w, std::span<const std::int64_t> indices);

// Greedy subsequence: j_1 = 1, then the first block whose end satisfies
// w(2^{-n_j}) <= w(2^{-m_i}) / 2. Records the halving and the l2 decay
// ||u_i||_2 <= 2^{-i} checks.
BlockSystem halving_subsequence(BlockSystem sys);

struct RatioReport {
  std::size_t samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  double proof_lower = 0.0;
  double proof_upper = 0.0;
  CheckLog checks;
};

// Phi(sum beta_i u_i) / ||beta||_inf over the batch. A zero beta must give
// Phi = 0 and is excluded from the ratios.
RatioReport c0_certificate(const BlockSystem& sys,
                           const std::vector<std::vector<double>>& betas);

// Seeded batch: e_1, all-ones, alternating signs, then uniform [-1, 1]
// entries, all of length `length`.
std::vector<std::vector<double>> beta_batch(std::size_t length,
                                            std::size_t count,
                                            std::uint64_t seed);

// Selected blocks scaled to Phi(u_i) = 1, as consecutive blocks whose
// start indices are the block firsts.
std::vector<RunCoefficients> normalize_blocks(const BlockSystem& sys);

// For blocks with Phi(u_n) = 1, w(2^{-m_{n+1}}) <= w(2^{-m_n}) / 2 on block
// starts and sum a^2 <= 2^{-n}, the functional satisfies
// ||beta||_inf / 2 <= Phi(sum beta_n u_n) <= 4 ||beta||_inf. Hypothesis
// failures throw HypothesisError naming the block and the condition.
RatioReport prop5_check(const std::vector<RunCoefficients>& blocks,
                        const Weight& w,
                        const std::vector<std::vector<double>>& betas,
                        double normalization_tol = 1e-9);

}  // namespace morrad

#endif  // MORRAD_CONSTRUCTIONS_HPP_
