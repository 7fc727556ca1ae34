#ifndef MORRAD_STEPFN_HPP_
#define MORRAD_STEPFN_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace morrad {

inline constexpr int kDefaultResolutionCap = 20;
inline constexpr int kHardResolutionCap = 24;

// [left, right] * 2^{-resolution}, with 0 <= left < right <= 2^resolution.
struct GridInterval {
  std::int64_t left = 0;
  std::int64_t right = 1;
  int resolution = 0;

  static GridInterval whole() { return {0, 1, 0}; }
  static GridInterval dyadic(int level, std::int64_t index) {
    return {index, index + 1, level};
  }

  double length() const;
  double midpoint() const;
  double left_point() const;
  double right_point() const;
  // Same interval at a finer resolution.
  GridInterval at_resolution(int finer) const;
  void check() const;
};

bool operator==(const GridInterval& a, const GridInterval& b);

// A function on [0,1] constant on the 2^N right-open cells
// [i 2^{-N}, (i+1) 2^{-N}); the point t = 1 belongs to the last cell.
//
// Integrals of |f|^p are evaluated from prefix sums of |v_i|^p, built once
// per exponent with compensated summation. The prefix cache is shared by
// copies and guarded by a mutex; it never changes an observable value.
class StepFunction {
 public:
  StepFunction();  // the zero function at resolution 0

  static StepFunction from_values(std::vector<double> values, int resolution,
                                  int cap = kDefaultResolutionCap);
  // Infers the resolution from the value count, which must be a power of 2.
  static StepFunction from_samples(std::vector<double> values,
                                   int cap = kDefaultResolutionCap);
  static StepFunction constant(double c, int resolution = 0);
  // Indicator of the grid interval, at the interval's resolution.
  static StepFunction indicator(const GridInterval& interval);

  int resolution() const { return resolution_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double sup_abs() const;

  // sum_{k < i} |v_k|^p for i = 0..2^N, i.e. 2^N times the integral of
  // |f|^p over [0, i 2^{-N}].
  std::span<const double> prefix(double p) const;

  // Mean of |f|^p over the interval. Intervals at a finer resolution than
  // the function split boundary cells by exact fractions.
  double average_p(double p, const GridInterval& interval) const;
  double integral_p(double p, const GridInterval& interval) const;

  double lp_norm(double p) const;

 private:
  struct PrefixCache {
    std::mutex mutex;
    std::map<double, std::shared_ptr<const std::vector<double>>> by_exponent;
  };

  StepFunction(std::vector<double> values, int resolution);

  // Integral of |f|^p over the interval in units of 2^{-R}, where R is
  // max(resolution(), interval.resolution).
  double integral_units(double p, const GridInterval& interval,
                        int* units_resolution) const;

  int resolution_ = 0;
  std::vector<double> values_;
  std::shared_ptr<PrefixCache> cache_;
};

// Replicates each cell 2^{finer - N} times.
StepFunction refine(const StepFunction& f, int finer,
                    int cap = kDefaultResolutionCap);

// Non-increasing rearrangement of |f| at the same resolution.
StepFunction rearrange(const StepFunction& f);

void check_resolution(int resolution, int cap);

}  // namespace morrad

#endif  // MORRAD_STEPFN_HPP_
