#pragma once

#include <vector>

#include "gdl/field_profile.hpp"
#include "gdl/material.hpp"

/// Closed-form localized solution of the damageable tensile rod on [-L, L],
/// computed on the half bar [0, L] with the single defect at x = 0 and
/// parametrized by the maximum damage d_m.
namespace gdl {

/// Evaluations with d_m closer than this to 1 are clamped to 1 - kRodClamp
/// where a formula carries a 1/(1 - d_m) factor.
inline constexpr double kRodClamp = 1e-9;

struct RodState {
  double d_m = 0.0;
  double sigma = 0.0;   ///< uniform axial stress
  double u_star = 0.0;  ///< end displacement
  double w = 0.0;       ///< apparent opening across the band
  double l_m = 0.0;     ///< band half-width l_c d_m
  ConstitutiveVariant variant;
  bool elastic = false;  ///< true on the homogeneous elastic branch (d_m = 0)
};

/// End displacement at which damage first grows.
double elastic_limit(const MaterialSpec& spec, const ConstitutiveVariant& variant);

/// Integral of (1/w - 1) over [0, d_m]. Diverges at d_m = 1 (DomainError).
double f_of_dm(Degradation kind, double d_m);

double stress_of_dm(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m);

/// u* = sigma (l_c F + L) / E on the localized branch.
double u_star_of_dm(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m);

/// w = 2 sigma l_c F / E.
double opening_w(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m);

RodState rod_state(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m);

/// d(x) = max(0, d_m - x/l_c) on [0, L].
FieldProfile damage_profile(const MaterialSpec& spec, double d_m, int n_samples);

/// Local driving force Y(x) at the equilibrium stress for d_m.
FieldProfile driving_force_profile(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                                   int n_samples);

/// Threshold Y_c(d(x)).
FieldProfile threshold_profile(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                               int n_samples);

/// Multiplier of the gradient bound as a function of the local damage d,
/// l_c (H(d) - sigma^2 (1/w(d) - 1) / (2E)); zero at d = 0 and d = d_m.
double gamma2_of_damage(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m, double d);
/// Case (i).
double gamma2_of_damage(const MaterialSpec& spec, double d_m, double d);

/// gamma2(x) on [0, L]; zero outside the band.
FieldProfile gamma2_profile(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m, int n_samples);
FieldProfile gamma2_profile(const MaterialSpec& spec, double d_m, int n_samples);

/// Elastic branch (one point at the elastic limit unless n_points > 2)
/// followed by the localized branch sampled uniformly in d_m on (0, 1].
/// The localized branch gets max(n_points - 1, 1) points and starts at d_m = 0.
std::vector<RodState> equilibrium_curve(const MaterialSpec& spec, const ConstitutiveVariant& variant, int n_points);

/// Mirrors a half-bar profile onto [-L, L] (x -> -x, same values).
FieldProfile mirror_profile(const FieldProfile& half);

}  // namespace gdl
