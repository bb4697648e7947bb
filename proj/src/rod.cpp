#include "gdl/rod.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gdl/errors.hpp"

namespace gdl {

namespace {

void require_rod_variant(const ConstitutiveVariant& variant) {
  if (variant.threshold == Threshold::BlockBilinear) {
    throw UnsupportedRegime("the bilinear interface threshold does not apply to the rod");
  }
}

void check_dm(double d_m) {
  if (!(d_m >= 0.0 && d_m <= 1.0)) throw DomainError("d_m outside [0, 1]");
}

double clamp_dm(double d_m) { return std::min(d_m, 1.0 - kRodClamp); }

// Product sigma * F, finite as d_m -> 1 for all three named cases.
double sigma_times_f(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d) {
  const double lambda = groups(spec).lambda;
  if (variant == ConstitutiveVariant::case_i()) {
    return spec.sigma_c * d * d / (lambda * d * d + 1.0 - d);
  }
  if (variant == ConstitutiveVariant::case_ii()) {
    return 2.0 * spec.sigma_c * d * d / std::sqrt(4.0 - 2.0 * d);
  }
  if (variant == ConstitutiveVariant::case_iii()) {
    if (d == 1.0) return 0.0;
    return spec.sigma_c * std::sqrt(1.0 - d) * (-d - std::log1p(-d));
  }
  const double dc = clamp_dm(d);
  return stress_of_dm(spec, variant, dc) * f_of_dm(variant.degradation, dc);
}

// Stress of the cohesive-equivalent branch at an arbitrary damage level.
double cohesive_stress(const MaterialSpec& spec, double d) {
  const double lambda = groups(spec).lambda;
  return spec.sigma_c * (1.0 - d) / (lambda * d * d + 1.0 - d);
}

FieldProfile half_bar_profile(const MaterialSpec& spec, double d_m, int n_samples, FieldKind kind) {
  FieldProfile p;
  p.kind = kind;
  p.parameter = d_m;
  const double l_m = spec.l_c * d_m;
  p.x = sample_grid(0.0, spec.L, n_samples, {l_m});
  p.values.resize(p.x.size(), 0.0);
  return p;
}

double half_bar_damage(const MaterialSpec& spec, double d_m, double x) {
  return std::max(0.0, d_m - x / spec.l_c);
}

}  // namespace

double elastic_limit(const MaterialSpec& spec, const ConstitutiveVariant& variant) {
  require_rod_variant(variant);
  const double slope = -omega_prime(variant.degradation, 0.0);
  if (!(slope > 0.0)) throw DegenerateMaterial("degradation function has zero slope at d = 0");
  return std::sqrt(2.0 * y_c(variant, spec, 0.0) / (slope * spec.E)) * spec.L;
}

double f_of_dm(Degradation kind, double d_m) {
  check_dm(d_m);
  if (d_m == 1.0) throw DomainError("F(d_m) diverges at d_m = 1");
  if (kind == Degradation::Quadratic) return d_m * d_m / (1.0 - d_m);
  return -d_m - std::log1p(-d_m);
}

double stress_of_dm(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m) {
  require_rod_variant(variant);
  check_dm(d_m);
  const double lambda = groups(spec).lambda;
  if (variant == ConstitutiveVariant::case_i()) {
    return spec.sigma_c * (1.0 - d_m) / (lambda * d_m * d_m + 1.0 - d_m);
  }
  if (variant == ConstitutiveVariant::case_ii()) {
    return 2.0 * spec.sigma_c * (1.0 - d_m) / std::sqrt(4.0 - 2.0 * d_m);
  }
  if (variant == ConstitutiveVariant::case_iii()) {
    return spec.sigma_c * std::sqrt(1.0 - d_m);
  }
  // Other pairings: sigma^2 = 2 E H(d_m) w / (1 - w), limit value at d_m = 0.
  const auto kind = variant.degradation;
  if (d_m == 0.0) {
    return std::sqrt(2.0 * spec.E * y_c(variant, spec, 0.0) / -omega_prime(kind, 0.0));
  }
  if (d_m == 1.0) return 0.0;
  const double w = omega(kind, d_m);
  return std::sqrt(2.0 * spec.E * y_c_integral(variant, spec, d_m) * w / (1.0 - w));
}

double u_star_of_dm(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m) {
  require_rod_variant(variant);
  check_dm(d_m);
  if (spec.l_c * d_m > spec.L) throw UnsupportedRegime("localization band wider than the half bar");
  return (stress_of_dm(spec, variant, d_m) * spec.L + spec.l_c * sigma_times_f(spec, variant, d_m)) / spec.E;
}

double opening_w(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m) {
  require_rod_variant(variant);
  check_dm(d_m);
  return 2.0 * spec.l_c * sigma_times_f(spec, variant, d_m) / spec.E;
}

RodState rod_state(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m) {
  RodState s;
  s.d_m = d_m;
  s.variant = variant;
  s.sigma = stress_of_dm(spec, variant, d_m);
  s.u_star = u_star_of_dm(spec, variant, d_m);
  s.w = opening_w(spec, variant, d_m);
  s.l_m = spec.l_c * d_m;
  return s;
}

FieldProfile damage_profile(const MaterialSpec& spec, double d_m, int n_samples) {
  check_dm(d_m);
  auto p = half_bar_profile(spec, d_m, n_samples, FieldKind::Damage);
  for (std::size_t i = 0; i < p.x.size(); ++i) p.values[i] = half_bar_damage(spec, d_m, p.x[i]);
  return p;
}

FieldProfile driving_force_profile(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                                   int n_samples) {
  check_dm(d_m);
  const double dm = clamp_dm(d_m);
  const double sigma = stress_of_dm(spec, variant, dm);
  auto p = half_bar_profile(spec, d_m, n_samples, FieldKind::DrivingForce);
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double d = half_bar_damage(spec, dm, p.x[i]);
    const double w = omega(variant.degradation, d);
    p.values[i] = -omega_prime(variant.degradation, d) / (w * w) * sigma * sigma / (2.0 * spec.E);
  }
  return p;
}

FieldProfile threshold_profile(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                               int n_samples) {
  check_dm(d_m);
  auto p = half_bar_profile(spec, d_m, n_samples, FieldKind::Threshold);
  for (std::size_t i = 0; i < p.x.size(); ++i) p.values[i] = y_c(variant, spec, half_bar_damage(spec, d_m, p.x[i]));
  return p;
}

double gamma2_of_damage(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m, double d) {
  check_dm(d_m);
  require_rod_variant(variant);
  if (!(d >= 0.0 && d <= d_m)) throw DomainError("gamma2 needs 0 <= d <= d_m");
  const double dm = clamp_dm(d_m);
  const double dd = std::min(d, dm);
  if (variant == ConstitutiveVariant::case_i()) {
    // Factored form; exact zero at d = d_m.
    const double s_d = cohesive_stress(spec, dd);
    const double s_m = cohesive_stress(spec, dm);
    return spec.l_c / (2.0 * spec.E) * dd * (2.0 - dd) / ((1.0 - dd) * (1.0 - dd)) * (s_d * s_d - s_m * s_m);
  }
  const double s_m = stress_of_dm(spec, variant, dm);
  const double w = omega(variant.degradation, dd);
  return spec.l_c * (y_c_integral(variant, spec, dd) - s_m * s_m / (2.0 * spec.E) * (1.0 - w) / w);
}

double gamma2_of_damage(const MaterialSpec& spec, double d_m, double d) {
  return gamma2_of_damage(spec, ConstitutiveVariant::case_i(), d_m, d);
}

FieldProfile gamma2_profile(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m, int n_samples) {
  check_dm(d_m);
  if (d_m == 1.0) throw DomainError("gamma2 profile needs d_m < 1");
  auto p = half_bar_profile(spec, d_m, n_samples, FieldKind::Gamma2);
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double d = half_bar_damage(spec, d_m, p.x[i]);
    p.values[i] = d > 0.0 ? gamma2_of_damage(spec, variant, d_m, d) : 0.0;
  }
  return p;
}

FieldProfile gamma2_profile(const MaterialSpec& spec, double d_m, int n_samples) {
  return gamma2_profile(spec, ConstitutiveVariant::case_i(), d_m, n_samples);
}

std::vector<RodState> equilibrium_curve(const MaterialSpec& spec, const ConstitutiveVariant& variant, int n_points) {
  if (n_points < 2) throw std::invalid_argument("equilibrium curve needs at least two points");
  require_rod_variant(variant);
  if (spec.l_c > spec.L) throw UnsupportedRegime("beta > 1: the fully developed band exceeds the half bar");
  std::vector<RodState> curve;
  int localized = n_points;
  if (n_points > 2) {
    RodState origin;
    origin.variant = variant;
    origin.elastic = true;
    curve.push_back(origin);
    --localized;
  }
  constexpr double kNearFailure = 1.0 - 1e-6;
  for (int i = 0; i < localized; ++i) {
    const double d_m = kNearFailure * static_cast<double>(i) / (localized - 1);
    curve.push_back(rod_state(spec, variant, d_m));
  }
  return curve;
}

FieldProfile mirror_profile(const FieldProfile& half) {
  FieldProfile full;
  full.kind = half.kind;
  full.parameter = half.parameter;
  const std::size_t n = half.x.size();
  const bool has_origin = n > 0 && half.x.front() == 0.0;
  for (std::size_t i = n; i-- > (has_origin ? 1 : 0);) {
    full.x.push_back(-half.x[i]);
    full.values.push_back(half.values[i]);
  }
  full.x.insert(full.x.end(), half.x.begin(), half.x.end());
  full.values.insert(full.values.end(), half.values.begin(), half.values.end());
  return full;
}

}  // namespace gdl
