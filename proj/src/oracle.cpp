#include "gdl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gdl/errors.hpp"

namespace gdl::oracle {

namespace {

struct SimpsonContext {
  const ScalarFunction& f;
  int max_depth;
  double error = 0.0;
  long evaluations = 0;

  double eval(double x) {
    ++evaluations;
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw ConvergenceError("integrand not finite at x = " + std::to_string(x));
    }
    return v;
  }
};

constexpr int kMinDepth = 3;

double simpson_panel(SimpsonContext& ctx, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = ctx.eval(lm);
  const double frm = ctx.eval(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const bool unresolvable = (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(m));
  if ((depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) || unresolvable) {
    ctx.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth >= ctx.max_depth) {
    throw ConvergenceError("adaptive Simpson exceeded max depth " + std::to_string(ctx.max_depth) + " near x = " +
                           std::to_string(m));
  }
  return simpson_panel(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_panel(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double one_minus_omega(Degradation kind, double d) { return kind == Degradation::Quadratic ? d * (2.0 - d) : d; }

double interface_damage(const MaterialSpec& spec, double l_m, double x) {
  const double d_m = std::min(1.0, l_m / spec.l_c);
  const double c = std::max(0.0, l_m - spec.l_c);
  return std::clamp(d_m - (x - c) / spec.l_c, 0.0, 1.0);
}

double descriptor_l_m(const MaterialSpec& spec, const BlockDescriptor& descriptor) {
  return descriptor.phase == BlockPhase::Propagation ? descriptor.driving + spec.l_c : descriptor.driving;
}

struct AveragedTerms {
  double driving_per_alpha2;
  double threshold;
};

AveragedTerms averaged_terms(const MaterialSpec& spec, const BlockDescriptor& descriptor,
                             const QuadratureConfig& config) {
  const auto [a, b] = averaged_interval(spec, descriptor);
  const double l_m = descriptor_l_m(spec, descriptor);
  const auto variant = ConstitutiveVariant::block();
  const auto y_coeff = [&](double x) {
    const double d = interface_damage(spec, l_m, x);
    return -omega_prime(variant.degradation, d) * 0.5 * spec.k * (spec.L - x) * (spec.L - x);
  };
  const auto y_crit = [&](double x) { return y_c(variant, spec, interface_damage(spec, l_m, x)); };
  const AveragedTerms terms{integrate(y_coeff, a, b, config).value, integrate(y_crit, a, b, config).value};
  if (!(terms.driving_per_alpha2 > 0.0) || !(terms.threshold > 0.0)) {
    throw InconsistencyError("averaged limit condition has non-positive integrals on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]");
  }
  return terms;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_depth < 10) throw std::invalid_argument("quadrature max_depth must be at least 10");
}

void BracketConfig::validate() const {
  if (!(lo < hi)) throw std::invalid_argument("bracket requires lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("bracket tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("bracket max_iter must be positive");
}

QuadratureResult integrate(const ScalarFunction& f, double a, double b, const QuadratureConfig& config) {
  config.validate();
  if (a == b) return {};
  if (b < a) {
    auto r = integrate(f, b, a, config);
    r.value = -r.value;
    return r;
  }
  SimpsonContext ctx{f, config.max_depth};
  const double fa = ctx.eval(a);
  const double fb = ctx.eval(b);
  const double m = 0.5 * (a + b);
  const double fm = ctx.eval(m);

  // Scale for the relative tolerance: coarse estimate of the integral of |f|.
  constexpr int kProbe = 16;
  double scale = 0.0;
  for (int i = 0; i < kProbe; ++i) {
    scale += std::abs(ctx.eval(a + (b - a) * (i + 0.5) / kProbe));
  }
  scale *= (b - a) / kProbe;
  const double tol = std::max(config.abs_tol, config.rel_tol * scale);

  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = simpson_panel(ctx, a, b, fa, fm, fb, whole, tol, 0);
  return {value, ctx.error, ctx.evaluations};
}

QuadratureResult integrate_piecewise(const ScalarFunction& f, double a, double b,
                                     const std::vector<double>& breakpoints, const QuadratureConfig& config) {
  std::vector<double> cuts{a};
  std::vector<double> inner;
  for (double p : breakpoints) {
    if (p > a && p < b) inner.push_back(p);
  }
  std::sort(inner.begin(), inner.end());
  for (double p : inner) {
    if (p > cuts.back()) cuts.push_back(p);
  }
  cuts.push_back(b);
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto part = integrate(f, cuts[i], cuts[i + 1], config);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.evaluations += part.evaluations;
  }
  return total;
}

double bisect(const ScalarFunction& f, const BracketConfig& config) {
  config.validate();
  double lo = config.lo;
  double hi = config.hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw ConvergenceError("bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] holds no sign change");
  }
  for (int it = 0; it < config.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= config.tol || mid == lo || mid == hi) return mid;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisection did not reach tolerance in " + std::to_string(config.max_iter) + " iterations");
}

double threshold_integral(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                          const QuadratureConfig& config) {
  return integrate([&](double d) { return y_c(variant, spec, d); }, 0.0, d_m, config).value;
}

double solve_rod_stress(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                        const QuadratureConfig& config) {
  if (!(d_m > 0.0 && d_m < 1.0)) throw DomainError("oracle rod stress needs 0 < d_m < 1");
  const double H = threshold_integral(spec, variant, d_m, config);
  const double w = omega(variant.degradation, d_m);
  const double compliance_excess = one_minus_omega(variant.degradation, d_m) / w;
  return std::sqrt(2.0 * spec.E * H / compliance_excess);
}

BandIntegrals rod_band_integrals(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                                 double sigma, const QuadratureConfig& config) {
  const double l_m = spec.l_c * d_m;
  const auto damage = [&](double x) { return std::clamp(d_m - x / spec.l_c, 0.0, 1.0); };
  const auto driving = [&](double x) {
    const double d = damage(x);
    const double w = omega(variant.degradation, d);
    return -omega_prime(variant.degradation, d) / (w * w) * sigma * sigma / (2.0 * spec.E);
  };
  const auto threshold = [&](double x) { return y_c(variant, spec, damage(x)); };
  return {integrate(driving, 0.0, l_m, config).value, integrate(threshold, 0.0, l_m, config).value};
}

double rod_end_displacement(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m, double sigma,
                            const QuadratureConfig& config) {
  const double l_m = spec.l_c * d_m;
  if (l_m > spec.L) throw UnsupportedRegime("localization band wider than the half bar");
  const auto compliance = [&](double x) {
    return 1.0 / omega(variant.degradation, std::clamp(d_m - x / spec.l_c, 0.0, 1.0));
  };
  const double band = integrate(compliance, 0.0, l_m, config).value;
  return sigma / spec.E * (band + spec.L - l_m);
}

std::pair<double, double> averaged_interval(const MaterialSpec& spec, const BlockDescriptor& descriptor) {
  switch (descriptor.phase) {
    case BlockPhase::Nucleation:
      if (!(descriptor.driving > 0.0 && descriptor.driving <= spec.L)) {
        throw PhaseError("nucleation needs 0 < l_m <= L");
      }
      return {0.0, descriptor.driving};
    case BlockPhase::Growth:
      if (!(descriptor.driving >= spec.L && descriptor.driving <= spec.l_c)) {
        throw PhaseError("growth needs L <= l_m <= l_c");
      }
      return {0.0, spec.L};
    case BlockPhase::Propagation:
      if (!(descriptor.driving >= 0.0 && descriptor.driving < spec.L)) {
        throw PhaseError("propagation needs 0 <= c < L");
      }
      return {descriptor.driving, spec.L};
    case BlockPhase::Elastic:
      break;
  }
  throw PhaseError("the averaged limit condition applies to inelastic phases only");
}

double solve_block_alpha(const MaterialSpec& spec, const BlockDescriptor& descriptor, const QuadratureConfig& config) {
  const auto terms = averaged_terms(spec, descriptor, config);
  return std::sqrt(terms.threshold / terms.driving_per_alpha2);
}

double solve_block_alpha_bisection(const MaterialSpec& spec, const BlockDescriptor& descriptor,
                                   const QuadratureConfig& config) {
  const auto terms = averaged_terms(spec, descriptor, config);
  const auto residual = [&](double alpha) { return alpha * alpha * terms.driving_per_alpha2 - terms.threshold; };
  double hi = std::sqrt(2.0 * spec.G_0 / spec.k) / spec.L;
  int grow = 0;
  while (residual(hi) <= 0.0) {
    hi *= 2.0;
    if (++grow > 200) throw ConvergenceError("could not bracket the block rotation");
  }
  return bisect(residual, {0.0, hi, 1e-17 * hi, 400});
}

double recompute_reaction(const MaterialSpec& spec, const BlockState& state, const QuadratureConfig& config) {
  const auto kind = Degradation::Quadratic;
  const auto integrand = [&](double x) {
    const double d = state.phase == BlockPhase::Elastic ? 0.0 : interface_damage(spec, state.l_m, x);
    return omega(kind, d) * spec.k * state.alpha * (spec.L - x) * (spec.L - x);
  };
  const double c = std::max(0.0, state.l_m - spec.l_c);
  const double h = std::min(state.l_m, spec.L);
  return integrate_piecewise(integrand, 0.0, spec.L, {c, h}, config).value / spec.L;
}

}  // namespace gdl::oracle
