#ifndef MORRAD_ERROR_HPP_
#define MORRAD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace morrad {

// Error categories. The CLI maps each category onto a process exit code.
enum class ErrorKind {
  Usage,       // malformed input, bad flag values
  Domain,      // argument outside the mathematical domain of an operation
  Validation,  // a weight or block system violates its standing hypotheses
  Cap,         // a resolution, enumeration or scan cap would be exceeded
  Hypothesis,  // a construction's analytic hypothesis appears to fail
  Check,       // a verified inequality failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::Domain, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::Validation, what) {}
};

class CapError : public Error {
 public:
  explicit CapError(const std::string& what) : Error(ErrorKind::Cap, what) {}
};

class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what)
      : Error(ErrorKind::Hypothesis, what) {}
};

}  // namespace morrad

#endif  // MORRAD_ERROR_HPP_
