#include <doctest.h>

#include <cmath>
#include <vector>

#include "morrad/constructions.hpp"
#include "morrad/error.hpp"

using namespace morrad;

TEST_CASE("index selection") {
  // First n with w(2^-n) sqrt(n - n_prev) >= 2^k, by linear search in the oracle.
  CHECK(prop2_indices(Weight::constant_one(), 4) == std::vector<std::int64_t>{4, 20, 84, 340});
  CHECK(prop2_indices(Weight::log(3), 3) == std::vector<std::int64_t>{66, 4293, 274825});
  CHECK(prop2_indices(Weight::log(3), 5).back() == 1125688276);
}

TEST_CASE("index selection fails where the weight decays too fast") {
  CHECK_THROWS_AS(prop2_indices(Weight::log(2), 3, std::int64_t{1} << 24), HypothesisError);
  CHECK_THROWS_AS(prop2_indices(Weight::power(2), 2, 1 << 20), HypothesisError);
}

TEST_CASE("block system invariants") {
  const Weight w = Weight::log(3);
  const BlockSystem sys = halving_subsequence(prop2_blocks(w, prop2_indices(w, 5)));
  CHECK(sys.checks.all_passed());
  CHECK(sys.block_count() == 5);
  CHECK(sys.block_first(1) == 1);
  CHECK(sys.block_last(1) == 66);
  CHECK(sys.coefficients[0] == doctest::Approx(1.0 / (66 * w.at_dyadic(66))));
  REQUIRE_FALSE(sys.selected.empty());
  CHECK(sys.selected.front() == 1);
  for (std::size_t k = 1; k <= sys.block_count(); ++k) {
    CHECK(sys.block(k).l2_norm() <= std::ldexp(1.0, -static_cast<int>(k)) * (1 + 1e-12));
    CHECK(phi(sys.block(k), w).w_part == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("c0 certificate and normalised blocks") {
  const Weight w = Weight::log(3);
  const BlockSystem sys = halving_subsequence(prop2_blocks(w, prop2_indices(w, 5)));
  const auto betas = beta_batch(sys.selected.size(), 100, 1);
  REQUIRE(betas.size() == 100);
  CHECK(betas[0][0] == 1.0);
  const RatioReport c0 = c0_certificate(sys, betas);
  CHECK(c0.checks.all_passed());
  CHECK(c0.min_ratio >= 1.0);
  CHECK(c0.max_ratio <= 5.0);
  const RatioReport p5 = prop5_check(normalize_blocks(sys), w, betas);
  CHECK(p5.checks.all_passed());
  CHECK(p5.min_ratio >= 0.5);
  CHECK(p5.max_ratio <= 4.0);
}

TEST_CASE("beta batches are reproducible") {
  CHECK(beta_batch(4, 10, 99) == beta_batch(4, 10, 99));
  CHECK(beta_batch(4, 10, 99) != beta_batch(4, 10, 100));
}

TEST_CASE("separating witness for w = sqrt(t), p = 1") {
  const SeparatingWitness s = prop1_witness(1.0, Weight::power(2), 10);
  CHECK(s.checks.all_passed());
  REQUIRE(s.exponents.size() == 10);
  for (int k = 1; k <= 10; ++k) {
    CHECK(s.exponents[k - 1] == 2 * k);
    CHECK(s.witness_values[k - 1] == doctest::Approx(std::pow(2.0, k / 2.0)).epsilon(1e-12));
    CHECK(s.tail_integrals[k - 1] == doctest::Approx(std::pow(2.0, -k / 2.0)).epsilon(1e-12));
  }
  CHECK(std::isfinite(s.kkl.upper));
  CHECK(s.kkl.upper / s.kkl.lower <= 2.0 * 2.0);
  // w(t) = t keeps v constant, so it can never double.
  CHECK_THROWS_AS(prop1_witness(1.0, Weight::power(1), 3), HypothesisError);
}
