#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gdl/block.hpp"
#include "gdl/errors.hpp"
#include "gdl/oracle.hpp"
#include "gdl/rod.hpp"

using namespace gdl;

TEST_SUITE("oracle") {

TEST_CASE("quadrature of smooth integrands") {
  const auto cubic = oracle::integrate([](double x) { return x * x * x - 2.0 * x + 1.0; }, 0.0, 2.0);
  CHECK(cubic.value == doctest::Approx(4.0 - 4.0 + 2.0).epsilon(1e-14));
  const auto s = oracle::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.error_estimate < 1e-10);
  const auto back = oracle::integrate([](double x) { return std::sin(x); }, std::numbers::pi, 0.0);
  CHECK(back.value == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(oracle::integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
}

TEST_CASE("piecewise quadrature handles kinks at breakpoints") {
  const auto f = [](double x) { return std::abs(x - 0.3); };
  const auto r = oracle::integrate_piecewise(f, 0.0, 1.0, {0.3, 7.0, -1.0});
  CHECK(r.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
}

TEST_CASE("quadrature failures") {
  CHECK_THROWS_AS(oracle::integrate([](double x) { return 1.0 / x; }, -1.0, 1.0), ConvergenceError);
  oracle::QuadratureConfig shallow;
  shallow.max_depth = 10;
  CHECK_THROWS_AS(oracle::integrate([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, shallow),
                  ConvergenceError);
  oracle::QuadratureConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("bisection") {
  const double r = oracle::bisect([](double x) { return x * x - 2.0; }, {0.0, 2.0, 1e-15, 200});
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(oracle::bisect([](double x) { return x * x + 1.0; }, {0.0, 2.0, 1e-15, 200}), ConvergenceError);
  CHECK_THROWS_AS(oracle::bisect([](double x) { return x; }, {1.0, 0.0, 1e-15, 200}), std::invalid_argument);
}

TEST_CASE("rod stress from the averaged condition matches the closed forms") {
  const auto spec = MaterialSpec::rod(1.0, 1.0, 1.0, 0.4, 0.5);
  for (const auto& v : {ConstitutiveVariant::case_i(), ConstitutiveVariant::case_ii(), ConstitutiveVariant::case_iii()}) {
    for (double d : {0.01, 0.25, 0.5, 0.75, 0.99}) {
      const double s = oracle::solve_rod_stress(spec, v, d);
      CHECK(s == doctest::Approx(stress_of_dm(spec, v, d)).epsilon(1e-10));
      const auto band = oracle::rod_band_integrals(spec, v, d, s);
      CHECK(band.driving == doctest::Approx(band.threshold).epsilon(1e-8));
      CHECK(oracle::rod_end_displacement(spec, v, d, s) == doctest::Approx(u_star_of_dm(spec, v, d)).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(oracle::solve_rod_stress(spec, ConstitutiveVariant::case_i(), 1.0), DomainError);
}

TEST_CASE("block rotation and reaction from the averaged condition") {
  const auto spec = MaterialSpec::block(2.0, 800.0, 0.25, 0.025, 6.0);
  struct Probe {
    BlockPhase phase;
    double driving;
  };
  for (const auto& p : {Probe{BlockPhase::Nucleation, 0.7}, Probe{BlockPhase::Growth, 4.5},
                        Probe{BlockPhase::Propagation, 1.3}}) {
    const auto s = block_state(spec, p.phase, p.driving);
    const oracle::BlockDescriptor desc{p.phase, p.driving};
    CHECK(oracle::solve_block_alpha(spec, desc) == doctest::Approx(s.alpha).epsilon(1e-10));
    CHECK(oracle::solve_block_alpha_bisection(spec, desc) == doctest::Approx(s.alpha).epsilon(1e-10));
    CHECK(oracle::recompute_reaction(spec, s) == doctest::Approx(s.P).epsilon(1e-10));
  }
  CHECK_THROWS_AS(oracle::averaged_interval(spec, {BlockPhase::Elastic, 0.0}), PhaseError);
  CHECK_THROWS_AS(oracle::averaged_interval(spec, {BlockPhase::Growth, 7.0}), PhaseError);
}

}  // TEST_SUITE
