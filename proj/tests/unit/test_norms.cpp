#include <doctest.h>

#include <cmath>
#include <vector>

#include "morrad/error.hpp"
#include "morrad/norms.hpp"
#include "morrad/rademacher.hpp"
#include "morrad/random.hpp"

using namespace morrad;

namespace {

StepFunction sample() { return StepFunction::from_samples({3.0, -1.0, 2.0, 0.5}); }

StepFunction random_step(Rng& rng, int N) {
  std::vector<double> v(std::size_t{1} << N);
  for (double& x : v) x = rng.uniform(-2.0, 2.0);
  return StepFunction::from_values(std::move(v), N);
}

}  // namespace

TEST_CASE("dyadic Morrey norm is exact") {
  const NormEnclosure e = dyadic_morrey(sample(), 1.0, Weight::power(2));
  CHECK(e.lower == doctest::Approx(1.625).epsilon(1e-15));
  CHECK(e.upper == e.lower);
  CHECK(e.method == EnclosureMethod::Exact);
  CHECK(e.witness == GridInterval::whole());

  const std::vector<double> a = {1.0, 1.0, 1.0};
  const NormEnclosure r = dyadic_morrey(materialize(a, 3), 2.0, Weight::log(2));
  CHECK(r.lower == doctest::Approx(1.7320508075688772935).epsilon(1e-15));
}

TEST_CASE("Morrey enclosure brackets the grid supremum") {
  const StepFunction f = sample();
  const Weight w = Weight::power(2);
  const NormEnclosure e = morrey(f, 1.0, w);
  // Brute force over all grid intervals gives sqrt(3).
  CHECK(e.lower == doctest::Approx(1.7320508075688772935).epsilon(1e-14));
  CHECK(e.witness.left == 0);
  CHECK(e.witness.right == 3);
  CHECK(e.upper >= e.lower);
  CHECK(e.upper <= 4.0 * dyadic_morrey(f, 1.0, w).lower);
  CHECK(interval_functional(f, 1.0, w, e.witness) == doctest::Approx(e.lower));
  const NormEnclosure refined = morrey(f, 1.0, w, 3);
  CHECK(refined.lower >= e.lower);
  CHECK(refined.upper <= e.upper + 1e-15);
}

TEST_CASE("Morrey scan respects the cap") {
  Rng rng(7);
  const StepFunction f = random_step(rng, 10);
  CHECK_THROWS_AS(morrey(f, 1.0, Weight::log(2), 4), CapError);
  CHECK_NOTHROW(morrey(f, 1.0, Weight::log(2), 3));
}

TEST_CASE("constant functions are computed exactly") {
  const StepFunction c = StepFunction::constant(2.0, 3);
  for (const char* spec : {"one", "power:q=2", "log:q=3"}) {
    const Weight w = Weight::parse(spec);
    const NormEnclosure e = morrey(c, 1.5, w);
    CHECK(e.lower == doctest::Approx(2.0));
    CHECK(e.upper == doctest::Approx(2.0));
    CHECK(e.method == EnclosureMethod::Exact);
  }
}

TEST_CASE("KKL and Marcinkiewicz") {
  const NormEnclosure k = kkl_norm(sample(), 1.0, Weight::power(2));
  CHECK(k.lower == doctest::Approx(1.7320508075688772935).epsilon(1e-14));
  CHECK(k.upper >= k.lower);
  CHECK(k.upper <= 3.0);

  const StepFunction g = StepFunction::from_samples({0.5, 2.0, -1.0, 3.0});
  const Weight w = Weight::log(2);
  CHECK(kkl_norm(g, 2.0, w).lower == doctest::Approx(1.8874586088176874243).epsilon(1e-14));
  CHECK(marcinkiewicz_norm(g, 2.0, w).lower == doctest::Approx(1.8874586088176874243).epsilon(1e-14));
}

TEST_CASE("embedding chain and p-monotonicity on random functions") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const StepFunction f = random_step(rng, 6);
    for (const char* spec : {"power:q=2", "log:q=3"}) {
      const Weight w = Weight::parse(spec);
      const EmbeddingReport rep = embedding_report(f, 1.5, w);
      CHECK(rep.checks.all_passed());
      CHECK(p_monotonicity_check(f, 1.0, 2.0, w).passed);
    }
  }
}

TEST_CASE("adjacent pair bound dominates the grid supremum") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const StepFunction f = random_step(rng, 5);
    const Weight w = Weight::log(2);
    CHECK(adjacent_pair_bound(f, 1.0, w) >= morrey(f, 1.0, w).lower - 1e-12);
  }
}

TEST_CASE("dual pairing") {
  const StepFunction g = StepFunction::constant(1.0, 2);
  const StepFunction h = StepFunction::from_samples({1.0, 0.0, 0.0, 0.0});
  CHECK(dual_pairing_lower(g, h, Weight::constant_one()) == doctest::Approx(0.25));
  const StepFunction big = StepFunction::constant(2.0, 2);
  CHECK_THROWS_AS(dual_pairing_lower(g, big, Weight::constant_one()), DomainError);
}

TEST_CASE("sandwich for Rademacher sums") {
  Rng rng(5);
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    for (int t = 0; t < 10; ++t) {
      std::vector<double> a(8);
      for (double& x : a) x = rng.uniform(-1.0, 1.0);
      const SandwichCheck c = rademacher_sandwich(a, p, Weight::log(3));
      CHECK(c.checks.all_passed());
      CHECK(c.lower <= c.dyadic * (1 + 1e-9));
      CHECK(c.dyadic <= c.upper * (1 + 1e-9));
    }
  }
}
