#pragma once

#include <functional>
#include <vector>

#include "gdl/block.hpp"
#include "gdl/material.hpp"

/// Independent numerical machinery used to re-derive the closed forms from
/// their defining integrals. Nothing in here calls the closed-form engines.
namespace gdl::oracle {

using ScalarFunction = std::function<double(double)>;

struct QuadratureConfig {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_depth = 50;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Adaptive Simpson with Richardson correction. Exact for cubics on a single
/// panel. Throws ConvergenceError when a panel needs more than max_depth
/// bisections.
QuadratureResult integrate(const ScalarFunction& f, double a, double b, const QuadratureConfig& config = {});

/// integrate() over [a, b] split at the given interior breakpoints.
QuadratureResult integrate_piecewise(const ScalarFunction& f, double a, double b, const std::vector<double>& breakpoints,
                                     const QuadratureConfig& config = {});

struct BracketConfig {
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-14;
  int max_iter = 300;

  void validate() const;
};

/// Bisection on a sign change of f over [lo, hi]. Throws ConvergenceError if
/// the bracket holds no sign change or max_iter is exhausted.
double bisect(const ScalarFunction& f, const BracketConfig& config);

/// H(d_m) by quadrature of Y_c over [0, d_m].
double threshold_integral(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                          const QuadratureConfig& config = {});

/// Uniform rod stress from the averaged limit condition,
/// sigma = sqrt(2 E H(d_m) / (1/w(d_m) - 1)) with H by quadrature.
double solve_rod_stress(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                        const QuadratureConfig& config = {});

/// Integral of the rod driving force and of the threshold over the
/// localization band [0, l_c d_m] at stress sigma, evaluated in x.
struct BandIntegrals {
  double driving = 0.0;
  double threshold = 0.0;
};
BandIntegrals rod_band_integrals(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m,
                                 double sigma, const QuadratureConfig& config = {});

/// End displacement from the global compliance integral over the half bar.
double rod_end_displacement(const MaterialSpec& spec, const ConstitutiveVariant& variant, double d_m, double sigma,
                            const QuadratureConfig& config = {});

/// Branch and driving variable identifying an inelastic block state.
struct BlockDescriptor {
  BlockPhase phase = BlockPhase::Nucleation;
  double driving = 0.0;  ///< l_m for nucleation/growth, c for propagation
};

/// Interval over which the averaged limit condition holds for the descriptor.
std::pair<double, double> averaged_interval(const MaterialSpec& spec, const BlockDescriptor& descriptor);

/// Rotation solving the averaged limit condition. Since the driving force is
/// proportional to alpha^2, alpha = sqrt(integral Yc / integral (Y / alpha^2)),
/// both integrals by quadrature.
double solve_block_alpha(const MaterialSpec& spec, const BlockDescriptor& descriptor,
                         const QuadratureConfig& config = {});

/// Same root, found by bisection on the residual of the averaged limit
/// condition in alpha. Slower; kept for robustness checks.
double solve_block_alpha_bisection(const MaterialSpec& spec, const BlockDescriptor& descriptor,
                                   const QuadratureConfig& config = {});

/// Reaction force from the moment balance about the centre of rotation,
/// by direct quadrature of w(d(x)) k alpha (L - x)^2 over [0, L].
double recompute_reaction(const MaterialSpec& spec, const BlockState& state, const QuadratureConfig& config = {});

}  // namespace gdl::oracle
