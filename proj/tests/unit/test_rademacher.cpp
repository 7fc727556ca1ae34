#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "morrad/error.hpp"
#include "morrad/rademacher.hpp"
#include "morrad/random.hpp"
#include "morrad/weight.hpp"

using namespace morrad;

TEST_CASE("rademacher functions are constant on dyadic cells") {
  const StepFunction r1 = rademacher(1, 2);
  CHECK(r1[0] == 1.0);
  CHECK(r1[1] == 1.0);
  CHECK(r1[2] == -1.0);
  CHECK(r1[3] == -1.0);
  const StepFunction r2 = rademacher(2, 2);
  CHECK(r2[0] == 1.0);
  CHECK(r2[1] == -1.0);
  CHECK_THROWS(rademacher(3, 2));
}

TEST_CASE("materialize sums the functions") {
  const std::vector<double> a = {1.0, 1.0};
  const StepFunction f = materialize(a, 2);
  CHECK(f[0] == 2.0);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);
  CHECK(f[3] == -2.0);
}

TEST_CASE("exact L_p norms") {
  // Reference values from brute force over sign patterns.
  const std::vector<double> a = {1.0, -0.5, 2.0};
  CHECK(exact_lp(a, 3.0) == doctest::Approx(2.4933154761193230082).epsilon(1e-14));
  const std::vector<double> ones = {1.0, 1.0, 1.0, 1.0};
  CHECK(exact_lp(ones, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(exact_lp(ones, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  const std::vector<double> too_long(29, 1.0);
  CHECK_THROWS_AS(exact_lp(too_long, 1.0), CapError);
}

TEST_CASE("coefficient parsing") {
  const CoefficientVector a = CoefficientVector::parse_inline("1,-0.5, 2");
  REQUIRE(a.size() == 3);
  CHECK(a[1] == -0.5);
  CHECK(a.l2_norm() == doctest::Approx(std::sqrt(5.25)));
  CHECK_THROWS_AS(CoefficientVector::parse_inline("1,,2"), UsageError);
  CHECK_THROWS_AS(CoefficientVector::parse_inline(""), UsageError);
}

TEST_CASE("phi functionals") {
  const std::vector<double> a = {0.3, -1.0, 0.5};
  CHECK(phi(a, Weight::log(2)).total == doctest::Approx(2.0575836902790225389).epsilon(1e-14));
  CHECK(phi_star(a, 3.0).total == doctest::Approx(2.4056339841101650055).epsilon(1e-14));
  CHECK(phi_K(a, 3.0).total == doctest::Approx(1.7131740584678923695).epsilon(1e-14));
  const std::vector<double> one = {1.0};
  CHECK(phi(one, Weight::log(2)).total == doctest::Approx(1.0 + std::sqrt(0.5)));
}

TEST_CASE("run-length coefficients agree with dense evaluation") {
  const std::vector<double> dense = {0.0, 0.0, 0.5, 0.5, 0.5, -0.25, -0.25};
  const RunCoefficients runs({{3, 3, 0.5}, {6, 2, -0.25}});
  CHECK(runs.last_index() == 7);
  CHECK(runs.to_dense() == dense);
  CHECK(runs.l2_norm() == doctest::Approx(std::sqrt(3 * 0.25 + 2 * 0.0625)));
  const Weight w = Weight::log(3);
  CHECK(phi(runs, w).total == doctest::Approx(phi(dense, w).total).epsilon(1e-14));
}

TEST_CASE("exact L_p invariants on random coefficients") {
  morrad::Rng rng(17);
  for (int trial = 0; trial < 16; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    std::vector<double> a(n);
    for (double& x : a) x = rng.uniform(-1.0, 1.0);
    const StepFunction f = materialize(a, static_cast<int>(n));
    double prev = 0.0;
    for (double p : {0.5, 1.0, 2.0, 3.0, 4.0}) {
      const double v = exact_lp(a, p);
      CHECK(v == doctest::Approx(f.lp_norm(p)).epsilon(1e-12));
      CHECK(v >= prev * (1 - 1e-14));
      prev = v;
    }
    std::vector<double> b = a;
    for (double& x : b) x = rng.below(2) ? -x : x;
    std::reverse(b.begin(), b.end());
    CHECK(exact_lp(b, 1.5) == doctest::Approx(exact_lp(a, 1.5)).epsilon(1e-12));
    CHECK(phi(b, Weight::log(2)).l2_part == doctest::Approx(phi(a, Weight::log(2)).l2_part));
  }
}
