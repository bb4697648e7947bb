#include "gdl/material.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_damage(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw DomainError("damage " + std::to_string(d) + " outside [0, 1]");
  }
}

double lambda_of(const MaterialSpec& spec) { return groups(spec).lambda; }

// Bilinear interface threshold: denominator G_0 + (G_c - G_0) w(d).
double bilinear_den(const MaterialSpec& spec, Degradation kind, double d) {
  return spec.G_0 + (spec.G_c - spec.G_0) * omega(kind, d);
}

}  // namespace

MaterialSpec MaterialSpec::rod(double E, double L, double sigma_c, double lambda, double beta) {
  if (!(lambda > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("lambda and beta must be positive");
  }
  MaterialSpec spec;
  spec.E = E;
  spec.L = L;
  spec.sigma_c = sigma_c;
  spec.l_c = beta * L;
  const double l_coh = spec.l_c / lambda;
  spec.G_c = sigma_c * sigma_c * l_coh / E;
  spec.validate();
  return spec;
}

MaterialSpec MaterialSpec::block(double L, double k, double G_c, double G_0, double l_c) {
  MaterialSpec spec;
  spec.L = L;
  spec.k = k;
  spec.G_c = G_c;
  spec.G_0 = G_0;
  spec.l_c = l_c;
  spec.validate_block();
  return spec;
}

void MaterialSpec::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("material parameter ") + name + " must be positive and finite");
    }
  };
  positive(E, "E");
  positive(L, "L");
  positive(l_c, "l_c");
  positive(sigma_c, "sigma_c");
  positive(G_c, "G_c");
  positive(k, "k");
  positive(G_0, "G_0");
}

void MaterialSpec::validate_block() const {
  validate();
  if (!(G_c > G_0)) {
    throw std::invalid_argument("block problems require G_c > G_0");
  }
}

DimensionlessGroups groups(const MaterialSpec& spec) {
  const double l_coh = spec.E * spec.G_c / (spec.sigma_c * spec.sigma_c);
  return {spec.l_c / l_coh, spec.l_c / spec.L, l_coh};
}

std::string to_string(const ConstitutiveVariant& variant) {
  if (variant == ConstitutiveVariant::case_i()) return "i";
  if (variant == ConstitutiveVariant::case_ii()) return "ii";
  if (variant == ConstitutiveVariant::case_iii()) return "iii";
  if (variant == ConstitutiveVariant::block()) return "block";
  std::string s = variant.degradation == Degradation::Quadratic ? "quadratic" : "linear";
  switch (variant.threshold) {
    case Threshold::CohesiveEquivalent: return s + "+cohesive";
    case Threshold::ConstantFull: return s + "+constant-full";
    case Threshold::ConstantHalf: return s + "+constant-half";
    case Threshold::BlockBilinear: return s + "+bilinear";
  }
  return s;
}

ConstitutiveVariant parse_variant(const std::string& name) {
  if (name == "i" || name == "1") return ConstitutiveVariant::case_i();
  if (name == "ii" || name == "2") return ConstitutiveVariant::case_ii();
  if (name == "iii" || name == "3") return ConstitutiveVariant::case_iii();
  if (name == "block") return ConstitutiveVariant::block();
  throw std::invalid_argument("unknown constitutive variant '" + name + "' (expected i, ii, iii)");
}

double omega(Degradation kind, double d) {
  check_damage(d);
  return kind == Degradation::Quadratic ? (1.0 - d) * (1.0 - d) : 1.0 - d;
}

double omega_prime(Degradation kind, double d) {
  check_damage(d);
  return kind == Degradation::Quadratic ? -2.0 * (1.0 - d) : -1.0;
}

double omega_second(Degradation kind, double d) {
  check_damage(d);
  return kind == Degradation::Quadratic ? 2.0 : 0.0;
}

double y_c(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d) {
  check_damage(d);
  const double s2 = spec.sigma_c * spec.sigma_c / spec.E;
  switch (variant.threshold) {
    case Threshold::CohesiveEquivalent: {
      const double lambda = lambda_of(spec);
      if (d == 1.0) return s2 * (1.0 - 2.0 * lambda) / (lambda * lambda * lambda);
      const double den = lambda * d * d + 1.0 - d;
      return s2 * (1.0 + lambda * d * d * (d - 3.0)) / (den * den * den);
    }
    case Threshold::ConstantFull:
      return s2;
    case Threshold::ConstantHalf:
      return 0.5 * s2;
    case Threshold::BlockBilinear: {
      const double den = bilinear_den(spec, variant.degradation, d);
      return -omega_prime(variant.degradation, d) * spec.G_0 * spec.G_c * spec.G_c / (den * den);
    }
  }
  return 0.0;
}

double y_c_prime(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d) {
  check_damage(d);
  const double s2 = spec.sigma_c * spec.sigma_c / spec.E;
  switch (variant.threshold) {
    case Threshold::CohesiveEquivalent: {
      const double lambda = lambda_of(spec);
      const double num = 1.0 + lambda * d * d * (d - 3.0);
      const double num_p = 3.0 * lambda * d * d - 6.0 * lambda * d;
      const double den = lambda * d * d + 1.0 - d;
      const double den_p = 2.0 * lambda * d - 1.0;
      return s2 * (num_p * den - 3.0 * num * den_p) / (den * den * den * den);
    }
    case Threshold::ConstantFull:
    case Threshold::ConstantHalf:
      return 0.0;
    case Threshold::BlockBilinear: {
      const auto kind = variant.degradation;
      const double den = bilinear_den(spec, kind, d);
      const double wp = omega_prime(kind, d);
      const double c = spec.G_0 * spec.G_c * spec.G_c;
      return c * (-omega_second(kind, d) / (den * den) + 2.0 * wp * wp * (spec.G_c - spec.G_0) / (den * den * den));
    }
  }
  return 0.0;
}

double y_c_integral(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d) {
  check_damage(d);
  const double s2 = spec.sigma_c * spec.sigma_c / spec.E;
  switch (variant.threshold) {
    case Threshold::CohesiveEquivalent: {
      const double lambda = lambda_of(spec);
      const double den = lambda * d * d + 1.0 - d;
      return 0.5 * s2 * d * (2.0 - d) / (den * den);
    }
    case Threshold::ConstantFull:
      return s2 * d;
    case Threshold::ConstantHalf:
      return 0.5 * s2 * d;
    case Threshold::BlockBilinear: {
      const double den = bilinear_den(spec, variant.degradation, d);
      return spec.G_0 * spec.G_c * spec.G_c / (spec.G_c - spec.G_0) * (1.0 / den - 1.0 / spec.G_c);
    }
  }
  return 0.0;
}

double stability_margin(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d) {
  const auto kind = variant.degradation;
  return y_c(variant, spec, d) * omega_second(kind, d) - y_c_prime(variant, spec, d) * omega_prime(kind, d);
}

double softening_margin(const ConstitutiveVariant& variant, const MaterialSpec& spec, double d) {
  const auto kind = variant.degradation;
  const double w = omega(kind, d);
  const double wp = omega_prime(kind, d);
  const double yc = y_c(variant, spec, d);
  return (y_c_prime(variant, spec, d) * w * w + 2.0 * yc * w * wp) * wp - yc * w * w * omega_second(kind, d);
}

double stability_bound_lambda(double d) {
  check_damage(d);
  if (d == 0.0) return kInf;
  if (d == 1.0) return 0.5;
  const double q = std::sqrt(d * d * d * d - 4.0 * d * d * d + 40.0 * d * d - 72.0 * d + 36.0);
  const double a = d * d * d - 4.0 * d * d - 10.0 * d + 12.0;
  // The quoted form has a removable 0/0 at d = (9 - sqrt(33))/4; its
  // rationalized form has one at d = 1. Use each away from its own.
  if (d < 0.9) return 8.0 * (1.0 - d) / (d * (a - (d - 2.0) * q));
  return ((d - 2.0) * q + a) / (8.0 * d * d * d * d - 36.0 * d * d * d + 24.0 * d * d);
}

double softening_bound_lambda(double d) {
  check_damage(d);
  if (d == 0.0) return kInf;
  return (1.0 + (1.0 - d) * (1.0 - d)) / (2.0 * d * d);
}

double softening_bound_lambda_quoted(double d) {
  check_damage(d);
  if (d == 0.0) return kInf;
  return (1.0 + (1.0 - d) * (1.0 - d)) / (2.0 * d);
}

bool lambda_admissible(double lambda) { return lambda > 0.0 && lambda <= 0.5; }

std::string to_string(SnapbackKind kind) {
  switch (kind) {
    case SnapbackKind::Stable: return "stable";
    case SnapbackKind::SnapBackAtOnset: return "snap-back-at-onset";
    case SnapbackKind::SnapBackWindow: return "snap-back-window";
  }
  return "?";
}

double linear_degradation_second_divergence() {
  // 3d + ln(1-d) is positive at 0.7 and negative at 0.999.
  const auto f = [](double d) { return 3.0 * d + std::log1p(-d); };
  const auto tol = [](double a, double b) { return b - a <= 1e-16; };
  const auto r = boost::math::tools::bisect(f, 0.7, 0.999, tol);
  return 0.5 * (r.first + r.second);
}

double critical_beta(const ConstitutiveVariant& variant, double lambda, double d_m) {
  check_damage(d_m);
  if (variant == ConstitutiveVariant::case_i()) return lambda;
  if (variant == ConstitutiveVariant::case_ii()) {
    if (d_m == 0.0) return kInf;
    return (3.0 - d_m) / (d_m * (8.0 - 3.0 * d_m));
  }
  if (variant == ConstitutiveVariant::case_iii()) {
    if (d_m == 1.0) return kInf;
    const double den = std::log1p(-d_m) + 3.0 * d_m;
    return den > 0.0 ? 1.0 / den : kInf;
  }
  throw UnsupportedRegime("snap-back analysis is available for cases i, ii and iii only");
}

SnapbackAssessment snapback_predicate(const ConstitutiveVariant& variant, double beta, double lambda) {
  if (!(beta > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("beta and lambda must be positive");
  }
  if (variant == ConstitutiveVariant::case_i()) {
    return {beta > lambda ? SnapbackKind::Stable : SnapbackKind::SnapBackAtOnset, {}};
  }
  if (variant == ConstitutiveVariant::case_ii()) {
    return {SnapbackKind::SnapBackAtOnset, {0.0}};
  }
  if (variant == ConstitutiveVariant::case_iii()) {
    return {SnapbackKind::SnapBackWindow, {0.0, linear_degradation_second_divergence()}};
  }
  throw UnsupportedRegime("snap-back analysis is available for cases i, ii and iii only");
}

}  // namespace gdl
