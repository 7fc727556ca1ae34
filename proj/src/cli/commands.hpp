#ifndef MORRAD_CLI_COMMANDS_HPP_
#define MORRAD_CLI_COMMANDS_HPP_

#include <cstdint>
#include <string>

#include "report.hpp"

namespace morrad::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0: keep MORRAD_THREADS or the default
  std::string output = "json";
  std::string out_file;
};

struct NormOptions {
  std::string space = "morrey";
  double p = 1.0;
  std::string weight = "one";
  std::string input;
  std::string coeffs;
  int refine = 0;
  int resolution = -1;  // for --coeffs; defaults to n
  int scan_cap = kDefaultGridScanCap;
};

struct ScanOptions {
  double p = 2.0;
  std::string weight = "log:q=2";
  int n = 12;
  int trials = 200;
  std::string family = "mixed";  // mixed | ones-sqrt
};

struct Remark1Options {
  double q = 3.0;
  int n = 12;
  int trials = 50;
};

struct ConstructOptions {
  std::string rule = "prop2";
  std::string weight = "log:q=3";
  int blocks = 5;
  std::int64_t scan_cap = std::int64_t{1} << 40;
  double p = 1.0;
  int levels = 10;
  int betas = 500;
};

struct Theorem3Options {
  std::string weight = "log:q=2";
  std::int64_t jmax = 40;
  std::string variant = "def";
  std::string checks = "all";
};

struct WeightsOptions {
  std::string weight = "log:q=2";
  std::int64_t M = 1000000;
  std::int64_t depth = 64;
};

Report cmd_norm(const GlobalOptions& g, const NormOptions& o);
Report cmd_equivalence_scan(const GlobalOptions& g, const ScanOptions& o);
Report cmd_remark1_compare(const GlobalOptions& g, const Remark1Options& o);
Report cmd_construct(const GlobalOptions& g, const ConstructOptions& o);
Report cmd_theorem3(const GlobalOptions& g, const Theorem3Options& o);
Report cmd_weights_check(const GlobalOptions& g, const WeightsOptions& o);

}  // namespace morrad::cli

#endif  // MORRAD_CLI_COMMANDS_HPP_
