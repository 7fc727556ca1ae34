#include "morrad/check.hpp"

#include <algorithm>
#include <limits>

namespace morrad {

CheckResult& CheckLog::slot(const std::string& name) {
  auto it = std::find_if(results_.begin(), results_.end(),
                         [&](const CheckResult& r) { return r.name == name; });
  if (it != results_.end()) return *it;
  CheckResult fresh;
  fresh.name = name;
  fresh.margin = std::numeric_limits<double>::infinity();
  results_.push_back(fresh);
  return results_.back();
}

void CheckLog::expect_le(const std::string& name, double lhs, double rhs,
                         double tol, const std::string& detail) {
  const bool ok = lhs <= rhs + tol;
  expect(name, ok, rhs + tol - lhs, detail);
}

void CheckLog::expect(const std::string& name, bool ok, double margin,
                      const std::string& detail) {
  CheckResult& r = slot(name);
  // The first failure keeps its counterexample; otherwise track the
  // tightest margin seen.
  if (!ok && r.passed) {
    r.passed = false;
    r.margin = margin;
    r.detail = detail;
    return;
  }
  if (r.passed && margin < r.margin) {
    r.margin = margin;
    r.detail = detail;
  }
}

bool CheckLog::all_passed() const {
  return std::all_of(results_.begin(), results_.end(),
                     [](const CheckResult& r) { return r.passed; });
}

void CheckLog::merge(const CheckLog& other) {
  for (const CheckResult& r : other.results_) expect(r.name, r.passed, r.margin, r.detail);
}

}  // namespace morrad
