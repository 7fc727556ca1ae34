#include "morrad/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "morrad/error.hpp"
#include "morrad/summation.hpp"

namespace morrad {
namespace {

double abs_pow(double v, double p) {
  const double a = std::fabs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

void check_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("exponent p must be positive and finite");
  }
}

}  // namespace

void check_resolution(int resolution, int cap) {
  if (cap > kHardResolutionCap) {
    throw CapError("resolution cap " + std::to_string(cap) +
                   " exceeds the hard limit " +
                   std::to_string(kHardResolutionCap));
  }
  if (resolution < 0) throw DomainError("resolution must be >= 0");
  if (resolution > cap) {
    throw CapError("resolution " + std::to_string(resolution) +
                   " exceeds the cap " + std::to_string(cap));
  }
}

double GridInterval::length() const {
  return std::ldexp(static_cast<double>(right - left), -resolution);
}

double GridInterval::midpoint() const {
  return std::ldexp(static_cast<double>(left + right), -resolution - 1);
}

double GridInterval::left_point() const {
  return std::ldexp(static_cast<double>(left), -resolution);
}

double GridInterval::right_point() const {
  return std::ldexp(static_cast<double>(right), -resolution);
}

GridInterval GridInterval::at_resolution(int finer) const {
  if (finer < resolution) {
    throw DomainError("cannot express an interval at a coarser resolution");
  }
  const int shift = finer - resolution;
  return {left << shift, right << shift, finer};
}

void GridInterval::check() const {
  if (resolution < 0 || resolution > 62) {
    throw DomainError("interval resolution out of range");
  }
  const std::int64_t cells = std::int64_t{1} << resolution;
  if (left >= right) throw DomainError("empty interval");
  if (left < 0 || right > cells) {
    throw DomainError("interval [" + std::to_string(left) + ", " +
                      std::to_string(right) + "] * 2^-" +
                      std::to_string(resolution) + " leaves [0,1]");
  }
}

bool operator==(const GridInterval& a, const GridInterval& b) {
  return a.left == b.left && a.right == b.right && a.resolution == b.resolution;
}

StepFunction::StepFunction() : StepFunction(std::vector<double>{0.0}, 0) {}

StepFunction::StepFunction(std::vector<double> values, int resolution)
    : resolution_(resolution),
      values_(std::move(values)),
      cache_(std::make_shared<PrefixCache>()) {}

StepFunction StepFunction::from_values(std::vector<double> values,
                                       int resolution, int cap) {
  check_resolution(resolution, cap);
  const std::size_t expected = std::size_t{1} << resolution;
  if (values.size() != expected) {
    throw DomainError("resolution " + std::to_string(resolution) + " needs " +
                      std::to_string(expected) + " values, got " +
                      std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("step function value not finite");
  }
  return StepFunction(std::move(values), resolution);
}

StepFunction StepFunction::from_samples(std::vector<double> values, int cap) {
  const std::size_t n = values.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw DomainError("value count " + std::to_string(n) +
                      " is not a power of two");
  }
  int resolution = 0;
  while ((std::size_t{1} << resolution) < n) ++resolution;
  return from_values(std::move(values), resolution, cap);
}

StepFunction StepFunction::constant(double c, int resolution) {
  return from_values(std::vector<double>(std::size_t{1} << resolution, c),
                     resolution, kHardResolutionCap);
}

StepFunction StepFunction::indicator(const GridInterval& interval) {
  interval.check();
  std::vector<double> v(std::size_t{1} << interval.resolution, 0.0);
  std::fill(v.begin() + interval.left, v.begin() + interval.right, 1.0);
  return from_values(std::move(v), interval.resolution, kHardResolutionCap);
}

double StepFunction::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

std::span<const double> StepFunction::prefix(double p) const {
  check_exponent(p);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& slot = cache_->by_exponent[p];
  if (!slot) {
    auto table = std::make_shared<std::vector<double>>(values_.size() + 1);
    CompensatedSum acc;
    (*table)[0] = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      acc.add(abs_pow(values_[i], p));
      (*table)[i + 1] = acc.value();
    }
    slot = std::move(table);
  }
  return *slot;
}

double StepFunction::integral_units(double p, const GridInterval& interval,
                                    int* units_resolution) const {
  interval.check();
  const int R = std::max(resolution_, interval.resolution);
  const GridInterval I = interval.at_resolution(R);
  const std::span<const double> P = prefix(p);
  *units_resolution = R;
  const int shift = R - resolution_;
  if (shift == 0) return P[I.right] - P[I.left];

  const std::int64_t width = std::int64_t{1} << shift;
  const std::int64_t first_cell = I.left >> shift;
  const std::int64_t first_end = (first_cell + 1) << shift;
  const double first_value = abs_pow(values_[first_cell], p);
  if (I.right <= first_end) {
    return static_cast<double>(I.right - I.left) * first_value;
  }
  const std::int64_t last_cell = I.right >> shift;
  const std::int64_t tail = I.right & (width - 1);
  double total = static_cast<double>(first_end - I.left) * first_value;
  total += (P[last_cell] - P[first_cell + 1]) * static_cast<double>(width);
  if (tail != 0) total += static_cast<double>(tail) * abs_pow(values_[last_cell], p);
  return total;
}

double StepFunction::average_p(double p, const GridInterval& interval) const {
  int R = 0;
  const double units = integral_units(p, interval, &R);
  const std::int64_t len =
      (interval.right - interval.left) << (R - interval.resolution);
  return units / static_cast<double>(len);
}

double StepFunction::integral_p(double p, const GridInterval& interval) const {
  int R = 0;
  const double units = integral_units(p, interval, &R);
  return std::ldexp(units, -R);
}

double StepFunction::lp_norm(double p) const {
  const std::span<const double> P = prefix(p);
  return std::pow(std::ldexp(P.back(), -resolution_), 1.0 / p);
}

StepFunction refine(const StepFunction& f, int finer, int cap) {
  if (finer < f.resolution()) {
    throw DomainError("refine target resolution is coarser than the input");
  }
  check_resolution(finer, cap);
  const std::size_t rep = std::size_t{1} << (finer - f.resolution());
  std::vector<double> out;
  out.reserve(f.size() * rep);
  for (double v : f.values()) out.insert(out.end(), rep, v);
  return StepFunction::from_values(std::move(out), finer, cap);
}

StepFunction rearrange(const StepFunction& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v = std::fabs(v);
  std::sort(out.begin(), out.end(), std::greater<double>());
  return StepFunction::from_values(std::move(out), f.resolution(),
                                   kHardResolutionCap);
}

}  // namespace morrad
