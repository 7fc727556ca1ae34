#ifndef MORRAD_CHECK_HPP_
#define MORRAD_CHECK_HPP_

#include <string>
#include <vector>

namespace morrad {

// Outcome of one verified inequality. `margin` is rhs + tol - lhs for an
// inequality lhs <= rhs + tol, so it is negative exactly when violated.
// Pure yes/no checks record margin 0. `detail` carries the counterexample or witness in human-readable form.
struct CheckResult {
  std::string name;
  bool passed = true;
  double margin = 0.0;
  std::string detail;
};

// Collects checks and keeps the worst margin per name.
class CheckLog {
 public:
  // Records lhs <= rhs + tol.
  void expect_le(const std::string& name, double lhs, double rhs,
                 double tol = 0.0, const std::string& detail = {});
  void expect(const std::string& name, bool ok, double margin = 0.0,
              const std::string& detail = {});

  const std::vector<CheckResult>& results() const { return results_; }
  bool all_passed() const;
  void merge(const CheckLog& other);

 private:
  CheckResult& slot(const std::string& name);
  std::vector<CheckResult> results_;
};

}  // namespace morrad

#endif  // MORRAD_CHECK_HPP_
