#include "gdl/block.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gdl/errors.hpp"
#include "gdl/oracle.hpp"

namespace gdl {

namespace {

constexpr auto kInterface = ConstitutiveVariant::block();

double sq(double v) { return v * v; }

FieldProfile empty_profile(const MaterialSpec& spec, const BlockState& state, int n_samples, FieldKind kind) {
  FieldProfile p;
  p.kind = kind;
  p.parameter = state.phase == BlockPhase::Propagation ? state.c : state.l_m;
  p.x = block_grid(spec, state, n_samples);
  p.values.assign(p.x.size(), 0.0);
  return p;
}

double interface_driving(const MaterialSpec& spec, const BlockState& state, double x) {
  const double d = block_damage(spec, state, x);
  return -omega_prime(kInterface.degradation, d) * 0.5 * spec.k * sq(state.alpha * (spec.L - x));
}

double interface_threshold(const MaterialSpec& spec, const BlockState& state, double x) {
  return y_c(kInterface, spec, block_damage(spec, state, x));
}

struct Gamma2Trace {
  FieldProfile profile;
  double end_value = 0.0;
  double max_abs = 0.0;
};

Gamma2Trace trace_gamma2(const MaterialSpec& spec, const BlockState& state, int n_samples) {
  Gamma2Trace out{empty_profile(spec, state, n_samples, FieldKind::Gamma2)};
  const auto [a, b] = active_set(spec, state);
  if (!(b > a)) return out;
  const auto rate = [&](double x) { return interface_driving(spec, state, x) - interface_threshold(spec, state, x); };
  const oracle::QuadratureConfig config{1e-16, 1e-13, 60};
  double running = 0.0;
  double last_x = a;
  auto& p = out.profile;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double x = p.x[i];
    if (x < a || x > b) continue;
    running += oracle::integrate(rate, last_x, x, config).value;
    last_x = x;
    p.values[i] = running;
    out.max_abs = std::max(out.max_abs, std::abs(running));
  }
  out.end_value = running;
  // The multiplier vanishes at the far end of the active set.
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    if (p.x[i] == b) p.values[i] = 0.0;
  }
  return out;
}

}  // namespace

std::string to_string(BlockPhase phase) {
  switch (phase) {
    case BlockPhase::Elastic: return "elastic";
    case BlockPhase::Nucleation: return "nucleation";
    case BlockPhase::Growth: return "growth";
    case BlockPhase::Propagation: return "propagation";
  }
  return "?";
}

BlockPhase parse_block_phase(const std::string& name) {
  if (name == "elastic" || name == "1") return BlockPhase::Elastic;
  if (name == "nucleation" || name == "2") return BlockPhase::Nucleation;
  if (name == "growth" || name == "3") return BlockPhase::Growth;
  if (name == "propagation" || name == "4") return BlockPhase::Propagation;
  throw std::invalid_argument("unknown block phase '" + name + "'");
}

ElasticLimits phase1_limits(const MaterialSpec& spec) {
  spec.validate_block();
  const double delta_0 = std::sqrt(2.0 * spec.G_0 / spec.k);
  return {delta_0, delta_0 / spec.L, std::sqrt(2.0 * spec.G_0 * spec.k) * spec.L / 3.0};
}

double phase2_alpha(const MaterialSpec& spec, double l_m) {
  const double L = spec.L;
  const double lc = spec.l_c;
  if (!(l_m >= 0.0 && l_m <= L && l_m <= lc)) throw PhaseError("nucleation branch needs 0 <= l_m <= min(L, l_c)");
  const double a1 = l_m * l_m * l_m / 6.0 - 2.0 / 3.0 * (lc + L) * l_m * l_m + (L + 2.0 * lc) * L * l_m - 2.0 * L * L * lc;
  const double a2 = (spec.G_0 - spec.G_c) * (l_m * l_m - 2.0 * lc * l_m) - spec.G_c * lc * lc;
  const double alpha_0 = phase1_limits(spec).alpha_0;
  return alpha_0 * std::sqrt(spec.G_c * lc * lc * L * L * (2.0 * lc - l_m) / (a1 * a2));
}

double phase2_reaction(const MaterialSpec& spec, double l_m, double alpha) {
  const double L = spec.L;
  const double lc = spec.l_c;
  const double bracket = L * L * L * lc * lc + (l_m - 3.0 * lc) * l_m * l_m * L * L -
                         (l_m - 4.0 * lc) * l_m * l_m * l_m * L / 2.0 + (l_m - 5.0 * lc) * sq(sq(l_m)) / 10.0;
  return bracket * spec.k * alpha / (3.0 * lc * lc * L);
}

double phase3_alpha(const MaterialSpec& spec, double l_m) {
  const double L = spec.L;
  const double lc = spec.l_c;
  if (!(l_m >= L && l_m <= lc)) throw PhaseError("growth branch needs L <= l_m <= l_c");
  const double b1 = L + 4.0 * lc - 4.0 * l_m;
  const double b2 = sq(lc - l_m) * spec.G_c - l_m * (l_m - 2.0 * lc) * spec.G_0;
  const double b3 = sq(L - l_m + lc) * spec.G_c - (L - l_m) * (L - l_m + 2.0 * lc) * spec.G_0;
  const double alpha_0 = phase1_limits(spec).alpha_0;
  return alpha_0 * std::sqrt(6.0 * sq(spec.G_c) * sq(sq(lc)) * (L + 2.0 * lc - 2.0 * l_m) / (b1 * b2 * b3));
}

double phase3_reaction(const MaterialSpec& spec, double l_m, double alpha) {
  const double L = spec.L;
  const double lc = spec.l_c;
  const double bracket = 10.0 * lc * lc + (5.0 * L - 20.0 * l_m) * lc + L * L - 5.0 * L * l_m + 10.0 * l_m * l_m;
  return spec.k * L * L / (30.0 * lc * lc) * bracket * alpha;
}

namespace {

double phase4_root(const MaterialSpec& spec, double c) {
  const double L = spec.L;
  const double lc = spec.l_c;
  if (!(c >= 0.0 && c < L)) throw PhaseError("propagation branch needs 0 <= c < L (the zone has left the domain)");
  const double h = L - c;
  const double den = spec.G_0 * (spec.G_c * h * h - spec.G_0 * (-L + c - lc) * (-L + c + lc));
  return std::sqrt(6.0 * sq(spec.G_c) * lc * lc * L * L / den);
}

}  // namespace

double phase4_alpha(const MaterialSpec& spec, double c) {
  return phase1_limits(spec).alpha_0 / (spec.L - c) * phase4_root(spec, c);
}

double phase4_alpha_quoted(const MaterialSpec& spec, double c) {
  return phase1_limits(spec).alpha_0 / sq(spec.L - c) * phase4_root(spec, c);
}

double phase4_reaction(const MaterialSpec& spec, double c, double alpha) {
  const double h = spec.L - c;
  return spec.k * sq(sq(h)) * h / (30.0 * sq(spec.l_c) * spec.L) * alpha;
}

BlockState elastic_state(const MaterialSpec& spec, double alpha) {
  const auto limits = phase1_limits(spec);
  if (!(alpha >= 0.0 && alpha <= limits.alpha_0 * (1.0 + 1e-12))) {
    throw PhaseError("elastic branch needs 0 <= alpha <= alpha_0");
  }
  BlockState s;
  s.phase = BlockPhase::Elastic;
  s.alpha = alpha;
  s.delta = alpha * spec.L;
  s.P = spec.k * alpha * spec.L * spec.L / 3.0;
  return s;
}

BlockState block_state(const MaterialSpec& spec, BlockPhase phase, double driving) {
  spec.validate_block();
  BlockState s;
  s.phase = phase;
  switch (phase) {
    case BlockPhase::Elastic:
      return elastic_state(spec, driving);
    case BlockPhase::Nucleation:
      s.l_m = driving;
      s.alpha = phase2_alpha(spec, driving);
      s.P = phase2_reaction(spec, driving, s.alpha);
      break;
    case BlockPhase::Growth:
      s.l_m = driving;
      s.alpha = phase3_alpha(spec, driving);
      s.P = phase3_reaction(spec, driving, s.alpha);
      break;
    case BlockPhase::Propagation:
      s.c = driving;
      s.l_m = driving + spec.l_c;
      s.alpha = phase4_alpha(spec, driving);
      s.P = phase4_reaction(spec, driving, s.alpha);
      break;
  }
  s.d_m = std::min(1.0, s.l_m / spec.l_c);
  s.delta = s.alpha * spec.L;
  return s;
}

double block_damage(const MaterialSpec& spec, const BlockState& state, double x) {
  if (state.phase == BlockPhase::Elastic) return 0.0;
  return std::clamp(state.d_m - (x - state.c) / spec.l_c, 0.0, 1.0);
}

std::pair<double, double> active_set(const MaterialSpec& spec, const BlockState& state) {
  if (state.phase == BlockPhase::Elastic) return {0.0, 0.0};
  return {std::min(state.c, spec.L), state.active_end(spec.L)};
}

std::vector<double> block_grid(const MaterialSpec& spec, const BlockState& state, int n_samples) {
  return sample_grid(0.0, spec.L, n_samples, {state.c, state.active_end(spec.L)});
}

FieldProfile block_damage_profile(const MaterialSpec& spec, const BlockState& state, int n_samples) {
  auto p = empty_profile(spec, state, n_samples, FieldKind::Damage);
  for (std::size_t i = 0; i < p.x.size(); ++i) p.values[i] = block_damage(spec, state, p.x[i]);
  return p;
}

FieldProfile traction_profile(const MaterialSpec& spec, const BlockState& state, int n_samples) {
  auto p = empty_profile(spec, state, n_samples, FieldKind::Traction);
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double x = p.x[i];
    p.values[i] = omega(kInterface.degradation, block_damage(spec, state, x)) * spec.k * state.alpha * (spec.L - x);
  }
  return p;
}

FieldProfile driving_force_profile(const MaterialSpec& spec, const BlockState& state, int n_samples) {
  auto p = empty_profile(spec, state, n_samples, FieldKind::DrivingForce);
  for (std::size_t i = 0; i < p.x.size(); ++i) p.values[i] = interface_driving(spec, state, p.x[i]);
  return p;
}

FieldProfile threshold_profile(const MaterialSpec& spec, const BlockState& state, int n_samples) {
  auto p = empty_profile(spec, state, n_samples, FieldKind::Threshold);
  for (std::size_t i = 0; i < p.x.size(); ++i) p.values[i] = interface_threshold(spec, state, p.x[i]);
  return p;
}

FieldProfile gamma2_profile_block(const MaterialSpec& spec, const BlockState& state, int n_samples,
                                  double end_tolerance) {
  auto trace = trace_gamma2(spec, state, n_samples);
  if (trace.max_abs > 0.0 && std::abs(trace.end_value) > end_tolerance * trace.max_abs) {
    throw InconsistencyError("gamma2 does not vanish at the end of the active set (relative residual " +
                             std::to_string(std::abs(trace.end_value) / trace.max_abs) +
                             "); the rotation does not satisfy the averaged limit condition");
  }
  return trace.profile;
}

double gamma2_end_residual(const MaterialSpec& spec, const BlockState& state) {
  const auto trace = trace_gamma2(spec, state, 401);
  return trace.max_abs > 0.0 ? std::abs(trace.end_value) / trace.max_abs : 0.0;
}

double propagation_end(const MaterialSpec& spec, double tail_fraction) {
  const double target = tail_fraction * phase1_limits(spec).P_0;
  const auto excess = [&](double c) { return phase4_reaction(spec, c, phase4_alpha(spec, c)) - target; };
  if (excess(0.0) <= 0.0) return 0.0;
  double hi = spec.L;
  double step = 0.5 * spec.L;
  // Walk towards L until P falls below the target; the root is then bracketed.
  double lo = 0.0;
  for (int i = 0; i < 60; ++i) {
    const double c = spec.L - step;
    if (excess(c) > 0.0) {
      lo = c;
      step *= 0.5;
    } else {
      hi = c;
      break;
    }
  }
  if (hi == spec.L) return lo;
  return oracle::bisect(excess, {lo, hi, 1e-15 * spec.L, 200});
}

std::vector<BlockState> equilibrium_curve_block(const MaterialSpec& spec, const BlockCurveOptions& options) {
  spec.validate_block();
  if (!(spec.l_c > spec.L)) throw UnsupportedRegime("the closed-form block solution requires l_c > L");
  const int n = options.n_points_per_phase;
  if (n < 2) throw std::invalid_argument("at least two points per phase are required");
  const auto uniform = [n](double a, double b, int i) {
    return i == n - 1 ? b : a + (b - a) * static_cast<double>(i) / (n - 1);
  };

  std::vector<BlockState> curve;
  curve.reserve(static_cast<std::size_t>(3 * n + 1));
  curve.push_back(elastic_state(spec, phase1_limits(spec).alpha_0));
  for (int i = 0; i < n; ++i) curve.push_back(block_state(spec, BlockPhase::Nucleation, uniform(0.0, spec.L, i)));
  for (int i = 0; i < n; ++i) curve.push_back(block_state(spec, BlockPhase::Growth, uniform(spec.L, spec.l_c, i)));
  const double c_end = propagation_end(spec, options.tail_fraction);
  for (int i = 0; i < n; ++i) curve.push_back(block_state(spec, BlockPhase::Propagation, uniform(0.0, c_end, i)));
  return curve;
}

}  // namespace gdl
