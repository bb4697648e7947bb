#include <cmath>
#include <limits>

#include "doctest.h"
#include "frozen.hpp"
#include "gdl/errors.hpp"
#include "gdl/material.hpp"
#include "gdl/oracle.hpp"

using namespace gdl;

namespace {

MaterialSpec default_rod() { return MaterialSpec::rod(1.0, 1.0, 1.0, 0.4, 0.5); }

MaterialSpec table_block() { return MaterialSpec::block(2.0, 800.0, 0.25, 0.025, 6.0); }

}  // namespace

TEST_SUITE("material") {

TEST_CASE("rod factory derives l_c and G_c from lambda and beta") {
  const auto spec = default_rod();
  CHECK(spec.l_c == doctest::Approx(0.5));
  CHECK(spec.G_c == doctest::Approx(1.25));
  const auto g = groups(spec);
  CHECK(g.lambda == doctest::Approx(0.4));
  CHECK(g.beta == doctest::Approx(0.5));
  CHECK(g.l_coh == doctest::Approx(1.25));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(MaterialSpec::rod(-1.0, 1.0, 1.0, 0.4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(MaterialSpec::rod(1.0, 1.0, 1.0, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(MaterialSpec::block(2.0, 800.0, 0.02, 0.025, 6.0), std::invalid_argument);
  MaterialSpec bad = default_rod();
  bad.E = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("variant names round trip") {
  for (const auto& v : {ConstitutiveVariant::case_i(), ConstitutiveVariant::case_ii(), ConstitutiveVariant::case_iii(),
                        ConstitutiveVariant::block()}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK_THROWS_AS(parse_variant("iv"), std::invalid_argument);
}

TEST_CASE("degradation functions") {
  CHECK(omega(Degradation::Quadratic, 0.5) == doctest::Approx(0.25));
  CHECK(omega_prime(Degradation::Quadratic, 0.5) == doctest::Approx(-1.0));
  CHECK(omega_second(Degradation::Quadratic, 0.3) == doctest::Approx(2.0));
  CHECK(omega(Degradation::Linear, 0.3) == doctest::Approx(0.7));
  CHECK(omega_prime(Degradation::Linear, 0.3) == doctest::Approx(-1.0));
  CHECK(omega_second(Degradation::Linear, 0.3) == 0.0);
  CHECK_THROWS_AS(omega(Degradation::Quadratic, 1.5), DomainError);
  CHECK_THROWS_AS(omega_prime(Degradation::Linear, -0.1), DomainError);
}

TEST_CASE("thresholds") {
  const auto spec = default_rod();
  CHECK(y_c(ConstitutiveVariant::case_i(), spec, 0.5) == doctest::Approx(frozen::yc_i_half).epsilon(1e-14));
  CHECK(y_c(ConstitutiveVariant::case_i(), spec, 0.0) == doctest::Approx(1.0));
  CHECK(y_c(ConstitutiveVariant::case_ii(), spec, 0.7) == doctest::Approx(1.0));
  CHECK(y_c(ConstitutiveVariant::case_iii(), spec, 0.7) == doctest::Approx(0.5));
  CHECK(std::isfinite(y_c(ConstitutiveVariant::case_i(), spec, 1.0)));
}

TEST_CASE("threshold antiderivative") {
  const auto spec = default_rod();
  const auto v = ConstitutiveVariant::case_i();
  CHECK(y_c_integral(v, spec, 0.5) == doctest::Approx(frozen::h_i_half).epsilon(1e-14));
  CHECK(y_c_integral(v, spec, 0.0) == 0.0);
  const double second = oracle::integrate([&](double d) { return y_c_integral(v, spec, d); }, 0.0, 1.0).value;
  CHECK(second == doctest::Approx(frozen::h_i_one_integral).epsilon(1e-12));
  CHECK(2.0 * spec.l_c * second == doctest::Approx(spec.G_c).epsilon(1e-12));
}

TEST_CASE("threshold slope agrees with a central difference") {
  const auto spec = default_rod();
  const auto block = table_block();
  const double h = 1e-6;
  for (double d : {0.1, 0.35, 0.6, 0.85}) {
    for (const auto& v : {ConstitutiveVariant::case_i(), ConstitutiveVariant::case_ii(), ConstitutiveVariant::case_iii()}) {
      const double fd = (y_c(v, spec, d + h) - y_c(v, spec, d - h)) / (2.0 * h);
      CHECK(y_c_prime(v, spec, d) == doctest::Approx(fd).epsilon(1e-7));
    }
    const auto vb = ConstitutiveVariant::block();
    const double fd = (y_c(vb, block, d + h) - y_c(vb, block, d - h)) / (2.0 * h);
    CHECK(y_c_prime(vb, block, d) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("interface work of separation") {
  const auto spec = table_block();
  const auto v = ConstitutiveVariant::block();
  const double quad = oracle::integrate([&](double d) { return y_c(v, spec, d); }, 0.0, 1.0).value;
  CHECK(quad == doctest::Approx(frozen::block_work_of_separation).epsilon(1e-12));
  CHECK(y_c_integral(v, spec, 1.0) == doctest::Approx(spec.G_c).epsilon(1e-14));
}

TEST_CASE("lambda bounds") {
  CHECK(stability_bound_lambda(0.5) == doctest::Approx(frozen::stability_bound_half).epsilon(1e-13));
  CHECK(stability_bound_lambda(1.0) == 0.5);
  CHECK(std::isinf(stability_bound_lambda(0.0)));
  // Both branches of the evaluation agree where they meet.
  CHECK(stability_bound_lambda(0.9 - 1e-12) == doctest::Approx(stability_bound_lambda(0.9)).epsilon(1e-9));
  const double singular = (9.0 - std::sqrt(33.0)) / 4.0;
  CHECK(std::isfinite(stability_bound_lambda(singular)));
  CHECK(softening_bound_lambda(0.5) == doctest::Approx(frozen::softening_bound_half));
  CHECK(softening_bound_lambda_quoted(0.5) == doctest::Approx(1.25));
  CHECK(softening_bound_lambda(1.0) == doctest::Approx(0.5));
  CHECK(softening_bound_lambda_quoted(1.0) == doctest::Approx(0.5));
}

TEST_CASE("stability bound matches the sign change of the stability margin") {
  for (double d : {0.2, 0.5, 0.8, 0.95}) {
    const double bound = stability_bound_lambda(d);
    const auto below = MaterialSpec::rod(1.0, 1.0, 1.0, bound * (1.0 - 1e-6), 0.5);
    const auto above = MaterialSpec::rod(1.0, 1.0, 1.0, bound * (1.0 + 1e-6), 0.5);
    CHECK(stability_margin(ConstitutiveVariant::case_i(), below, d) > 0.0);
    CHECK(stability_margin(ConstitutiveVariant::case_i(), above, d) < 0.0);
  }
}

TEST_CASE("admissible lambda") {
  CHECK(lambda_admissible(0.4));
  CHECK(lambda_admissible(0.5));
  CHECK_FALSE(lambda_admissible(0.51));
  CHECK_FALSE(lambda_admissible(0.0));
}

TEST_CASE("critical beta") {
  CHECK(critical_beta(ConstitutiveVariant::case_i(), 0.4, 0.3) == 0.4);
  CHECK(critical_beta(ConstitutiveVariant::case_ii(), 0.4, 1e-3) == doctest::Approx(2.999 / (1e-3 * 7.997)));
  CHECK(std::isinf(critical_beta(ConstitutiveVariant::case_iii(), 0.4, 0.97)));
  CHECK(critical_beta(ConstitutiveVariant::case_iii(), 0.4, 0.5) == doctest::Approx(1.0 / (std::log(0.5) + 1.5)));
  CHECK_THROWS_AS(critical_beta(ConstitutiveVariant::block(), 0.4, 0.5), UnsupportedRegime);
}

TEST_CASE("snap-back classification") {
  CHECK(snapback_predicate(ConstitutiveVariant::case_i(), 0.5, 0.4).kind == SnapbackKind::Stable);
  CHECK(snapback_predicate(ConstitutiveVariant::case_i(), 0.3, 0.4).kind == SnapbackKind::SnapBackAtOnset);
  CHECK(snapback_predicate(ConstitutiveVariant::case_ii(), 0.5, 0.4).kind == SnapbackKind::SnapBackAtOnset);
  const auto iii = snapback_predicate(ConstitutiveVariant::case_iii(), 0.5, 0.4);
  CHECK(iii.kind == SnapbackKind::SnapBackWindow);
  REQUIRE(iii.divergence_points.size() == 2);
  CHECK(iii.divergence_points[1] == doctest::Approx(frozen::second_divergence).epsilon(1e-14));
  CHECK(to_string(SnapbackKind::SnapBackWindow) == "snap-back-window");
}

}  // TEST_SUITE
