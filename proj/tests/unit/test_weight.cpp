#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "morrad/error.hpp"
#include "morrad/weight.hpp"

using namespace morrad;

TEST_CASE("parse produces the canonical spec") {
  CHECK(Weight::parse("one").spec() == "one");
  CHECK(Weight::parse("power:q=2").spec() == "power:q=2");
  CHECK(Weight::parse("log:q=3").spec() == "log:q=3");
  CHECK(Weight::parse("log:q=2.5").q() == doctest::Approx(2.5));
}

TEST_CASE("parse rejects malformed specs") {
  CHECK_THROWS_AS(Weight::parse("cosine"), UsageError);
  CHECK_THROWS_AS(Weight::parse("power:q="), UsageError);
  CHECK_THROWS_AS(Weight::parse("power:q=-1"), DomainError);
  CHECK_THROWS_AS(Weight::parse("log:q=0"), DomainError);
}

TEST_CASE("evaluation matches the closed forms") {
  // Reference values from tests/oracles/oracles.py.
  CHECK(Weight::log(3).eval(0.3) == doctest::Approx(0.71489713070351191093).epsilon(1e-15));
  CHECK(Weight::power(2).eval(0.3) == doctest::Approx(0.54772255750516611346).epsilon(1e-15));
  CHECK(Weight::log(2).at_dyadic(10) == doctest::Approx(0.30151134457776362265).epsilon(1e-15));
  CHECK(Weight::constant_one().eval(1e-300) == 1.0);
  CHECK_THROWS_AS(Weight::power(2).eval(0.0), DomainError);
  CHECK_THROWS_AS(Weight::power(2).eval(1.5), DomainError);
}

TEST_CASE("at_dyadic agrees with eval and stays accurate far below the double range") {
  for (const char* spec : {"one", "power:q=2", "log:q=2", "log:q=3"}) {
    const Weight w = Weight::parse(spec);
    for (int m = 0; m <= 60; ++m) {
      CHECK(w.at_dyadic(m) == doctest::Approx(w.eval(std::ldexp(1.0, -m))).epsilon(1e-14));
    }
  }
  const Weight w = Weight::log(2);
  CHECK(w.at_dyadic(1'000'000'000) == doctest::Approx(1.0 / std::sqrt(1'000'000'001.0)).epsilon(1e-14));
}

TEST_CASE("validate accepts the quasi-concave families") {
  for (const char* spec : {"one", "power:q=1", "power:q=2", "log:q=2", "log:q=3"}) {
    const WeightDiagnostics d = validate(Weight::parse(spec), 64);
    CHECK(d.quasi_concave);
    CHECK(d.doubling_constant <= WeightDiagnostics::kAnalyticDoublingBound + 1e-12);
  }
  CHECK(validate(Weight::power(1), 64).doubling_constant == doctest::Approx(2.0));
}

TEST_CASE("validate rejects weights violating the hypotheses") {
  // power with q < 1 makes w(t)/t increasing.
  CHECK_THROWS_AS(validate(Weight::power(0.5), 16), ValidationError);
  // Not normalised at 1.
  CHECK_THROWS_AS(validate(Weight::table({{0.25, 0.5}, {1.0, 2.0}}), 8), ValidationError);
  // Decreasing somewhere.
  CHECK_THROWS_AS(validate(Weight::table({{0.25, 0.8}, {0.5, 0.6}, {1.0, 1.0}}), 8), ValidationError);
}

TEST_CASE("table weights load from csv") {
  const auto path = std::filesystem::temp_directory_path() / "morrad_weight_table.csv";
  {
    std::ofstream out(path);
    out << "t,w\n0.25,0.5\n0.5,0.75\n1,1\n";
  }
  const Weight w = Weight::parse("table:" + path.string());
  CHECK(w.eval(0.375) == doctest::Approx(0.625));
  CHECK(w.eval(0.1) == doctest::Approx(0.5));
  CHECK_NOTHROW(validate(w, 20));
  std::filesystem::remove(path);
  CHECK_THROWS(Weight::parse("table:/nonexistent/morrad.csv"));
}

TEST_CASE("growth of w(2^-m) sqrt(m)") {
  const Condition10Report r = check_condition10(Weight::log(3), 1000);
  CHECK(r.sup == doctest::Approx(3.1612242697972473671).epsilon(1e-14));
  CHECK(r.argmax == 1000);
  CHECK(r.growth_ratio == doctest::Approx(1.0492315023863581418).epsilon(1e-14));
  CHECK(r.trend == Trend::Growing);
  CHECK(r.verdict() == "growing up to M=1000");

  CHECK(check_condition10(Weight::log(2), 100000).trend == Trend::Bounded);
  CHECK(check_condition10(Weight::power(2), 1000).trend == Trend::Decaying);
  CHECK(check_condition10(Weight::log(3), 100000).trend == Trend::Growing);
  CHECK_THROWS_AS(check_condition10(Weight::log(3), 0), DomainError);
}
