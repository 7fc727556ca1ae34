#ifndef MORRAD_WEIGHT_HPP_
#define MORRAD_WEIGHT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace morrad {

enum class WeightKind { ConstantOne, Power, Log, Table };

struct WeightSample {
  double t;
  double w;
};

// A weight w on (0,1] normalised by w(1) = 1.
//
//   constant-one   w(t) = 1
//   power          w(t) = t^{1/q}
//   log            w(t) = log2(2/t)^{-1/q}
//   table          piecewise-linear through the samples, constant outside
//                  the sampled range
//
// Construction checks only structure; quasi-concavity and normalisation
// are established by validate().
class Weight {
 public:
  static Weight constant_one();
  static Weight power(double q);
  static Weight log(double q);
  static Weight table(std::vector<WeightSample> samples,
                      std::string label = {});

  // Parses "one", "power:q=<float>", "log:q=<float>" or "table:<path>",
  // where the file is CSV with header "t,w".
  static Weight parse(std::string_view spec);
  static Weight load_table(const std::string& path);

  WeightKind kind() const { return kind_; }
  double q() const { return q_; }
  const std::vector<WeightSample>& samples() const { return samples_; }

  // Canonical mini-language form, e.g. "log:q=3".
  const std::string& spec() const { return spec_; }

  // w(t) for t in (0,1]; throws DomainError otherwise.
  double eval(double t) const;
  double operator()(double t) const { return eval(t); }

  // w(2^{-m}) for m >= 0. Computed without forming 2^{-m}, so it stays
  // accurate for the log family far below the double range.
  double at_dyadic(std::int64_t m) const;

 private:
  Weight() = default;

  WeightKind kind_ = WeightKind::ConstantOne;
  double q_ = 0.0;
  std::vector<WeightSample> samples_;
  std::string spec_;
};

enum class Trend { Decaying, Bounded, Growing };

const char* to_string(Trend trend);

// max_{1<=m<=M} w(2^{-m}) sqrt(m). The trend is a heuristic read of the
// last quarter of the range and says nothing about m > M.
struct Condition10Report {
  double sup = 0.0;
  std::int64_t argmax = 1;
  std::int64_t horizon = 1;
  double growth_ratio = 1.0;  // s_M / s_{floor(3M/4)}
  double loglog_slope = 0.0;  // growth_ratio as a power of M / floor(3M/4)
  Trend trend = Trend::Bounded;

  // "bounded up to M=..." and the like.
  std::string verdict() const;
};

Condition10Report check_condition10(const Weight& w, std::int64_t M);

struct WeightDiagnostics {
  double doubling_constant = 1.0;           // max w(2t)/w(t) on the grid
  static constexpr double kAnalyticDoublingBound = 2.0;
  double condition10_sup = 0.0;
  std::int64_t condition10_argmax = 1;
  double w_zero_limit_estimate = 1.0;       // w at the smallest grid point
  std::int64_t grid_depth = 1;
  bool quasi_concave = true;
  bool doubling_within_analytic_bound = true;
  Condition10Report condition10;
};

// Checks w(1) = 1, monotonicity of w and of w(t)/t on {2^{-j}: j <= depth}
// plus all table breakpoints, and computes the diagnostics. Throws
// ValidationError naming the offending abscissa.
WeightDiagnostics validate(const Weight& w, std::int64_t grid_depth);

}  // namespace morrad

#endif  // MORRAD_WEIGHT_HPP_
