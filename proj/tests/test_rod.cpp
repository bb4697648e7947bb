#include <cmath>

#include "doctest.h"
#include "frozen.hpp"
#include "gdl/errors.hpp"
#include "gdl/rod.hpp"

using namespace gdl;

namespace {

MaterialSpec default_rod() { return MaterialSpec::rod(1.0, 1.0, 1.0, 0.4, 0.5); }

}  // namespace

TEST_SUITE("rod") {

TEST_CASE("elastic limit") {
  const auto spec = default_rod();
  CHECK(elastic_limit(spec, ConstitutiveVariant::case_i()) == doctest::Approx(1.0));
  CHECK(elastic_limit(spec, ConstitutiveVariant::case_ii()) == doctest::Approx(1.0));
  CHECK(elastic_limit(spec, ConstitutiveVariant::case_iii()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(elastic_limit(spec, ConstitutiveVariant::block()), UnsupportedRegime);
}

TEST_CASE("compliance integral F") {
  CHECK(f_of_dm(Degradation::Quadratic, 0.5) == doctest::Approx(0.5));
  CHECK(f_of_dm(Degradation::Linear, 0.5) == doctest::Approx(-0.5 - std::log(0.5)));
  CHECK(f_of_dm(Degradation::Quadratic, 0.0) == 0.0);
  CHECK_THROWS_AS(f_of_dm(Degradation::Quadratic, 1.0), DomainError);
}

TEST_CASE("stress and end displacement at d_m = 0.5") {
  const auto spec = default_rod();
  const auto i = rod_state(spec, ConstitutiveVariant::case_i(), 0.5);
  CHECK(i.sigma == doctest::Approx(frozen::sigma_i_half).epsilon(1e-14));
  CHECK(i.u_star == doctest::Approx(frozen::ustar_i_half).epsilon(1e-14));
  CHECK(i.l_m == doctest::Approx(0.25));
  const auto ii = rod_state(spec, ConstitutiveVariant::case_ii(), 0.5);
  CHECK(ii.sigma == doctest::Approx(frozen::sigma_ii_half).epsilon(1e-14));
  CHECK(ii.u_star == doctest::Approx(frozen::ustar_ii_half).epsilon(1e-14));
  const auto iii = rod_state(spec, ConstitutiveVariant::case_iii(), 0.5);
  CHECK(iii.sigma == doctest::Approx(frozen::sigma_iii_half).epsilon(1e-14));
  CHECK(iii.u_star == doctest::Approx(frozen::ustar_iii_half).epsilon(1e-14));
}

TEST_CASE("branch starts at the elastic limit") {
  const auto spec = default_rod();
  for (const auto& v : {ConstitutiveVariant::case_i(), ConstitutiveVariant::case_ii(), ConstitutiveVariant::case_iii()}) {
    CHECK(u_star_of_dm(spec, v, 0.0) == doctest::Approx(elastic_limit(spec, v)));
    CHECK(stress_of_dm(spec, v, 0.0) == doctest::Approx(spec.sigma_c));
  }
}

TEST_CASE("cohesive law is linear softening") {
  const auto spec = default_rod();
  const double w_c = 2.0 * spec.G_c / spec.sigma_c;
  for (double d : {0.05, 0.3, 0.6, 0.9, 0.999}) {
    const auto s = rod_state(spec, ConstitutiveVariant::case_i(), d);
    CHECK(s.sigma == doctest::Approx(spec.sigma_c * (1.0 - s.w / w_c)).epsilon(1e-12));
  }
  CHECK(opening_w(spec, ConstitutiveVariant::case_i(), 1.0) == doctest::Approx(w_c));
}

TEST_CASE("band wider than the half bar") {
  const auto spec = MaterialSpec::rod(1.0, 1.0, 1.0, 0.4, 1.5);
  CHECK_THROWS_AS(u_star_of_dm(spec, ConstitutiveVariant::case_i(), 0.9), UnsupportedRegime);
  CHECK_THROWS_AS(equilibrium_curve(spec, ConstitutiveVariant::case_i(), 10), UnsupportedRegime);
}

TEST_CASE("damage profile") {
  const auto spec = default_rod();
  const auto p = damage_profile(spec, 0.5, 21);
  p.check();
  CHECK(p.values.front() == doctest::Approx(0.5));
  CHECK(p.values.back() == 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    CHECK(p.values[k] == doctest::Approx(std::max(0.0, 0.5 - p.x[k] / spec.l_c)));
  }
}

TEST_CASE("gradient multiplier") {
  const auto spec = default_rod();
  CHECK(gamma2_of_damage(spec, 0.5, 0.3) == doctest::Approx(frozen::gamma2_i_dm_half_x_0p1).epsilon(1e-12));
  CHECK(gamma2_of_damage(spec, 0.5, 0.5) == doctest::Approx(0.0));
  const auto p = gamma2_profile(spec, 0.5, 101);
  p.check();
  for (double v : p.values) CHECK(v >= 0.0);
  CHECK_THROWS_AS(gamma2_of_damage(spec, 0.5, 0.7), DomainError);
}

TEST_CASE("gradient multiplier slope is Y - Yc for every variant") {
  const auto spec = default_rod();
  const double d_m = 0.6;
  for (const auto& v : {ConstitutiveVariant::case_i(), ConstitutiveVariant::case_ii(), ConstitutiveVariant::case_iii()}) {
    CHECK(std::abs(gamma2_of_damage(spec, v, d_m, d_m)) < 1e-12);
    CHECK(gamma2_of_damage(spec, v, d_m, 0.0) == 0.0);
    const double sigma = stress_of_dm(spec, v, d_m);
    const double w_step = 1e-6;
    for (double x : {0.05, 0.1, 0.2, 0.25}) {
      const auto g = [&](double xx) { return gamma2_of_damage(spec, v, d_m, d_m - xx / spec.l_c); };
      const double slope = (g(x + w_step) - g(x - w_step)) / (2.0 * w_step);
      const double d = d_m - x / spec.l_c;
      const double w = omega(v.degradation, d);
      const double y = -omega_prime(v.degradation, d) * sigma * sigma / (2.0 * spec.E * w * w);
      CHECK(slope == doctest::Approx(y - y_c(v, spec, d)).epsilon(1e-6));
    }
  }
}

TEST_CASE("equilibrium curve layout") {
  const auto spec = default_rod();
  const auto two = equilibrium_curve(spec, ConstitutiveVariant::case_i(), 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].u_star == doctest::Approx(1.0));
  const auto curve = equilibrium_curve(spec, ConstitutiveVariant::case_i(), 51);
  REQUIRE(curve.size() == 51);
  CHECK(curve[0].elastic);
  CHECK(curve[0].u_star == 0.0);
  CHECK(curve[1].d_m == 0.0);
  for (std::size_t k = 2; k < curve.size(); ++k) CHECK(curve[k].u_star > curve[k - 1].u_star);
  CHECK_THROWS_AS(equilibrium_curve(spec, ConstitutiveVariant::case_i(), 1), std::invalid_argument);
}

TEST_CASE("mirrored profile is symmetric") {
  const auto spec = default_rod();
  const auto full = mirror_profile(damage_profile(spec, 0.4, 11));
  full.check();
  const std::size_t n = full.size();
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(full.x[k] == doctest::Approx(-full.x[n - 1 - k]));
    CHECK(full.values[k] == doctest::Approx(full.values[n - 1 - k]));
  }
}

}  // TEST_SUITE
