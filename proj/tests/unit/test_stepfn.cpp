#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "morrad/error.hpp"
#include "morrad/stepfn.hpp"
#include "morrad/stepfn_io.hpp"

using namespace morrad;

namespace {
StepFunction sample() { return StepFunction::from_samples({3.0, -1.0, 2.0, 0.5}); }
}  // namespace

TEST_CASE("construction and resolution") {
  const StepFunction f = sample();
  CHECK(f.resolution() == 2);
  CHECK(f.size() == 4);
  CHECK(f.sup_abs() == 3.0);
  CHECK_THROWS_AS(StepFunction::from_samples({1.0, 2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(StepFunction::from_values({1.0, 2.0}, 2), DomainError);
  CHECK_THROWS_AS(StepFunction::from_samples({1.0, NAN}), DomainError);
  CHECK_THROWS_AS(check_resolution(21, kDefaultResolutionCap), CapError);
  CHECK_NOTHROW(check_resolution(20, kDefaultResolutionCap));
}

TEST_CASE("grid intervals") {
  const GridInterval i = GridInterval::dyadic(3, 5);
  CHECK(i.left == 5);
  CHECK(i.right == 6);
  CHECK(i.length() == 0.125);
  CHECK(GridInterval::whole().length() == 1.0);
  CHECK_THROWS(GridInterval{3, 2, 2}.check());
  CHECK_THROWS(GridInterval{0, 5, 2}.check());
}

TEST_CASE("integrals and norms") {
  const StepFunction f = sample();
  CHECK(f.lp_norm(1.0) == doctest::Approx(1.625));
  CHECK(f.lp_norm(1.5) == doctest::Approx(1.7648356266048149072).epsilon(1e-14));
  CHECK(f.average_p(1.0, GridInterval::dyadic(1, 1)) == doctest::Approx(1.25));
  // Finer than the function: half of cell 0 and half of cell 1.
  CHECK(f.average_p(1.5, GridInterval{1, 3, 3}) == doctest::Approx(3.0980762113533159403).epsilon(1e-14));
  CHECK(f.integral_p(1.0, GridInterval::whole()) == doctest::Approx(1.625));
  const auto pre = f.prefix(1.0);
  REQUIRE(pre.size() == 5);
  CHECK(pre[4] == doctest::Approx(6.5));
}

TEST_CASE("refine and rearrange") {
  const StepFunction f = sample();
  const StepFunction g = refine(f, 4);
  CHECK(g.resolution() == 4);
  CHECK(g[5] == -1.0);
  CHECK(g.lp_norm(2.0) == doctest::Approx(f.lp_norm(2.0)));
  const StepFunction r = rearrange(f);
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 2.0);
  CHECK(r[2] == 1.0);
  CHECK(r[3] == 0.5);
}

TEST_CASE("csv and binary round trips") {
  const auto dir = std::filesystem::temp_directory_path();
  const StepFunction f = sample();
  for (bool binary : {false, true}) {
    const auto path = dir / (binary ? "morrad_f.bin" : "morrad_f.csv");
    save_stepfn(path.string(), f, binary);
    const StepFunction g = load_stepfn(path.string());
    REQUIRE(g.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(g[i] == f[i]);
    std::filesystem::remove(path);
  }
  const auto bad = dir / "morrad_bad.csv";
  {
    std::ofstream out(bad);
    out << "1\n2\nthree\n4\n";
  }
  CHECK_THROWS(load_stepfn(bad.string()));
  std::filesystem::remove(bad);
}
