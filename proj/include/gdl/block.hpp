#pragma once

#include <string>
#include <vector>

#include "gdl/field_profile.hpp"
#include "gdl/material.hpp"

/// Rigid block bonded to a support by a gradient-regularized damageable
/// interface, loaded in mode I by an end displacement. Interface: quadratic
/// degradation, bilinear-law threshold, damage gradient bound 1/l_c.
namespace gdl {

enum class BlockPhase {
  Elastic,      ///< no damage, delta <= delta_0
  Nucleation,   ///< 0 < l_m <= L
  Growth,       ///< L <= l_m <= l_c
  Propagation,  ///< l_m > l_c, fully damaged length c > 0
};

std::string to_string(BlockPhase phase);
BlockPhase parse_block_phase(const std::string& name);

struct BlockState {
  BlockPhase phase = BlockPhase::Elastic;
  double l_m = 0.0;    ///< process-zone size
  double c = 0.0;      ///< fully damaged length
  double d_m = 0.0;    ///< maximum damage
  double alpha = 0.0;  ///< rotation
  double delta = 0.0;  ///< end displacement alpha L
  double P = 0.0;      ///< reaction force

  /// Portion of the process zone inside [0, L].
  double active_end(double L) const { return l_m < L ? l_m : L; }
};

struct ElasticLimits {
  double delta_0;
  double alpha_0;
  double P_0;
};

ElasticLimits phase1_limits(const MaterialSpec& spec);

/// Rotation on the nucleation branch, 0 <= l_m <= L (l_m = 0 gives alpha_0).
double phase2_alpha(const MaterialSpec& spec, double l_m);
double phase2_reaction(const MaterialSpec& spec, double l_m, double alpha);

/// Rotation on the growth branch, L <= l_m <= l_c.
double phase3_alpha(const MaterialSpec& spec, double l_m);
double phase3_reaction(const MaterialSpec& spec, double l_m, double alpha);

/// Rotation on the propagation branch, 0 <= c < L. The prefactor is
/// alpha_0 / (L - c); see phase4_alpha_quoted for the (L - c)^2 variant.
double phase4_alpha(const MaterialSpec& spec, double c);
double phase4_reaction(const MaterialSpec& spec, double c, double alpha);

/// Propagation rotation with the prefactor alpha_0 / (L - c)^2 as it is
/// commonly quoted. Dimensionally inconsistent; used only to document the
/// discrepancy at the growth/propagation junction.
double phase4_alpha_quoted(const MaterialSpec& spec, double c);

/// Elastic state at rotation alpha in [0, alpha_0].
BlockState elastic_state(const MaterialSpec& spec, double alpha);

/// Inelastic state from its branch and driving variable (l_m, or c in propagation).
BlockState block_state(const MaterialSpec& spec, BlockPhase phase, double driving);

/// Interface damage d(x) = min(1, max(0, d_m - (x - c)/l_c)).
double block_damage(const MaterialSpec& spec, const BlockState& state, double x);

/// Endpoints of the set where the gradient bound is active, clipped to [0, L];
/// empty (a == b) in the elastic phase.
std::pair<double, double> active_set(const MaterialSpec& spec, const BlockState& state);

/// Sampling grid on [0, L] containing c and the active-set end exactly.
std::vector<double> block_grid(const MaterialSpec& spec, const BlockState& state, int n_samples);

FieldProfile block_damage_profile(const MaterialSpec& spec, const BlockState& state, int n_samples);
FieldProfile traction_profile(const MaterialSpec& spec, const BlockState& state, int n_samples);
FieldProfile driving_force_profile(const MaterialSpec& spec, const BlockState& state, int n_samples);
FieldProfile threshold_profile(const MaterialSpec& spec, const BlockState& state, int n_samples);

/// Multiplier of the gradient bound: cumulative integral of Y - Yc from the
/// start of the active set. Throws InconsistencyError when the value at the
/// far end of the active set exceeds end_tolerance * max |gamma2|.
FieldProfile gamma2_profile_block(const MaterialSpec& spec, const BlockState& state, int n_samples,
                                  double end_tolerance = 1e-8);

/// Residual of gamma2 at the far end of the active set, relative to max |gamma2|.
double gamma2_end_residual(const MaterialSpec& spec, const BlockState& state);

/// Propagation crack length at which P falls to tail_fraction * P_0.
double propagation_end(const MaterialSpec& spec, double tail_fraction);

struct BlockCurveOptions {
  int n_points_per_phase = 50;
  /// The propagation branch is sampled until P = tail_fraction * P_0.
  double tail_fraction = 1e-4;
};

/// Four concatenated branches; the junction states appear at the end of one
/// branch and the start of the next. Requires l_c > L.
std::vector<BlockState> equilibrium_curve_block(const MaterialSpec& spec, const BlockCurveOptions& options = {});

}  // namespace gdl
