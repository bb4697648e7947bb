#include "verify.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "gdl/block.hpp"
#include "gdl/errors.hpp"
#include "gdl/fem.hpp"
#include "gdl/oracle.hpp"
#include "gdl/rod.hpp"

namespace gdl::cli {

namespace {

using ojson = nlohmann::ordered_json;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  void check(const std::string& name, double residual, double tolerance, std::optional<double> value = {},
             std::optional<double> reference = {}) {
    const bool ok = std::isfinite(residual) && residual <= tolerance;
    ojson c;
    c["name"] = name;
    if (value) c["value"] = *value;
    if (reference) c["reference"] = *reference;
    c["residual"] = residual;
    c["tolerance"] = tolerance;
    c["pass"] = ok;
    checks_.push_back(std::move(c));
    pass_ = pass_ && ok;
  }

  void require(const std::string& name, bool ok, std::optional<double> value = {}) {
    ojson c;
    c["name"] = name;
    if (value) c["value"] = *value;
    c["pass"] = ok;
    checks_.push_back(std::move(c));
    pass_ = pass_ && ok;
  }

  void note(const std::string& text) { notes_.push_back(text); }

  void fail(const std::string& what) {
    ojson c;
    c["name"] = "exception";
    c["message"] = what;
    c["pass"] = false;
    checks_.push_back(std::move(c));
    pass_ = false;
  }

  bool pass() const { return pass_; }

  ojson to_json() const {
    ojson j;
    j["name"] = name_;
    j["pass"] = pass_;
    if (!notes_.empty()) j["notes"] = notes_;
    j["checks"] = checks_;
    return j;
  }

 private:
  std::string name_;
  bool pass_ = true;
  ojson checks_ = ojson::array();
  std::vector<std::string> notes_;
};

const std::array<ConstitutiveVariant, 3> kRodVariants{ConstitutiveVariant::case_i(), ConstitutiveVariant::case_ii(),
                                                      ConstitutiveVariant::case_iii()};

// 50 points of (a, b) at the cell midpoints.
std::vector<double> midpoints(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * (i + 0.5) / n;
  return v;
}

void elastic_limits(Suite& s, const MaterialSpec& block) {
  const auto lim = phase1_limits(block);
  const auto v = ConstitutiveVariant::block();
  const double yc0 = y_c(v, block, 0.0);
  const double dw0 = omega_prime(v.degradation, 0.0);
  // Onset at the loaded edge: -w'(0) k delta^2 / 2 = Yc(0).
  const double delta_ref = oracle::bisect([&](double d) { return -0.5 * dw0 * block.k * d * d - yc0; },
                                          {0.0, block.L, 1e-17, 400});
  s.check("delta_0", rel(lim.delta_0, delta_ref), 1e-9, lim.delta_0, delta_ref);
  const double p_ref = oracle::recompute_reaction(block, elastic_state(block, lim.alpha_0));
  s.check("P_0", rel(lim.P_0, p_ref), 1e-9, lim.P_0, p_ref);
}

void junctions(Suite& s, const MaterialSpec& block, bool quoted, ojson& discrepancies) {
  const double alpha_0 = phase1_limits(block).alpha_0;
  const auto end2 = block_state(block, BlockPhase::Nucleation, block.L);
  const auto start3 = block_state(block, BlockPhase::Growth, block.L);
  s.check("alpha continuity at l_m = L", rel(start3.alpha, end2.alpha), 1e-9, start3.alpha / alpha_0,
          end2.alpha / alpha_0);
  s.check("P continuity at l_m = L", rel(start3.P, end2.P), 1e-9, start3.P, end2.P);
  const double a2_oracle = oracle::solve_block_alpha(block, {BlockPhase::Growth, block.L});
  s.check("alpha/alpha_0 at l_m = L against oracle", rel(start3.alpha, a2_oracle), 1e-9, start3.alpha / alpha_0,
          a2_oracle / alpha_0);

  const auto end3 = block_state(block, BlockPhase::Growth, block.l_c);
  const double a4_corrected = phase4_alpha(block, 0.0);
  const double a4_quoted = phase4_alpha_quoted(block, 0.0);
  const double a4 = quoted ? a4_quoted : a4_corrected;
  const double p4 = phase4_reaction(block, 0.0, a4);
  if (quoted) s.note("propagation branch evaluated with the quoted rotation formula");
  s.check("alpha continuity at l_m = l_c", rel(a4, end3.alpha), 1e-9, a4 / alpha_0, end3.alpha / alpha_0);
  s.check("P continuity at l_m = l_c", rel(p4, end3.P), 1e-9, p4, end3.P);
  const double a3_oracle = oracle::solve_block_alpha(block, {BlockPhase::Growth, block.l_c});
  s.check("alpha/alpha_0 at l_m = l_c against oracle", rel(end3.alpha, a3_oracle), 1e-9, end3.alpha / alpha_0,
          a3_oracle / alpha_0);
  const double p3_oracle = oracle::recompute_reaction(block, end3);
  s.check("P at l_m = l_c against oracle", rel(end3.P, p3_oracle), 1e-9, end3.P, p3_oracle);

  ojson d;
  d["name"] = "propagation rotation, quoted form";
  d["description"] =
      "the quoted prefactor alpha_0/(L-c)^2 is off by a factor 1/(L-c) from the form continuous with the growth "
      "branch; at the junction with L = 2 it gives half the rotation";
  d["alpha_quoted_over_alpha_0"] = a4_quoted / alpha_0;
  d["alpha_corrected_over_alpha_0"] = a4_corrected / alpha_0;
  d["ratio"] = a4_quoted / a4_corrected;
  d["junction_residual_quoted"] = rel(a4_quoted, end3.alpha);
  d["junction_residual_corrected"] = rel(a4_corrected, end3.alpha);
  discrepancies.push_back(std::move(d));
}

void rod_oracles(Suite& s, const MaterialSpec& rod) {
  for (const auto& v : kRodVariants) {
    double e_sigma = 0.0;
    double e_u = 0.0;
    for (double d : midpoints(0.0, 1.0, 50)) {
      const double sigma = stress_of_dm(rod, v, d);
      e_sigma = std::max(e_sigma, rel(sigma, oracle::solve_rod_stress(rod, v, d)));
      e_u = std::max(e_u, rel(u_star_of_dm(rod, v, d), oracle::rod_end_displacement(rod, v, d, sigma)));
    }
    s.check("sigma(d_m), case " + to_string(v), e_sigma, 1e-8);
    s.check("u*(d_m), case " + to_string(v), e_u, 1e-8);
  }
}

void block_oracles(Suite& s, const MaterialSpec& block) {
  struct Branch {
    BlockPhase phase;
    double a, b;
  };
  const double c_end = propagation_end(block, 1e-4);
  for (const auto& br : {Branch{BlockPhase::Nucleation, 0.0, block.L}, Branch{BlockPhase::Growth, block.L, block.l_c},
                         Branch{BlockPhase::Propagation, 0.0, c_end}}) {
    double e_alpha = 0.0;
    double e_p = 0.0;
    for (double x : midpoints(br.a, br.b, 50)) {
      const auto st = block_state(block, br.phase, x);
      e_alpha = std::max(e_alpha, rel(st.alpha, oracle::solve_block_alpha(block, {br.phase, x})));
      e_p = std::max(e_p, rel(st.P, oracle::recompute_reaction(block, st)));
    }
    s.check("alpha, " + to_string(br.phase), e_alpha, 1e-8);
    s.check("P, " + to_string(br.phase), e_p, 1e-8);
  }
}

void cohesive_line(Suite& s, const MaterialSpec& rod) {
  const auto v = ConstitutiveVariant::case_i();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double d = (i + 0.5) / 100.0;
    const auto st = rod_state(rod, v, d);
    const double line = 1.0 - st.w * rod.sigma_c / (2.0 * rod.G_c);
    worst = std::max(worst, std::abs(st.sigma / rod.sigma_c - line));
  }
  s.check("100 (w, sigma) pairs on sigma = sigma_c (1 - w sigma_c / (2 G_c))", worst, 1e-8);
}

void work_of_separation(Suite& s, const MaterialSpec& block) {
  const auto v = ConstitutiveVariant::block();
  oracle::QuadratureConfig q;
  q.rel_tol = 1e-13;
  const double quad = oracle::integrate([&](double d) { return y_c(v, block, d); }, 0.0, 1.0, q).value;
  s.check("integral of Yc over [0, 1] by quadrature", rel(quad, block.G_c), 1e-10, quad, block.G_c);
  const double closed = y_c_integral(v, block, 1.0);
  s.check("closed-form antiderivative at 1", rel(closed, block.G_c), 1e-10, closed, block.G_c);
}

// Smallest margins over 1000 damage values in (0, 1].
std::pair<double, double> worst_margins(double lambda) {
  const auto spec = MaterialSpec::rod(1.0, 1.0, 1.0, lambda, 0.5);
  const auto v = ConstitutiveVariant::case_i();
  double stab = std::numeric_limits<double>::infinity();
  double soft = stab;
  for (int i = 1; i <= 1000; ++i) {
    const double d = i / 1000.0;
    stab = std::min(stab, stability_margin(v, spec, d));
    soft = std::min(soft, softening_margin(v, spec, d));
  }
  return {stab, soft};
}

void admissibility(Suite& s, double lambda, ojson& warnings) {
  const auto [stab_in, soft_in] = worst_margins(0.49);
  s.require("lambda = 0.49: stability margin >= 0 at 1000 d", stab_in >= 0.0, stab_in);
  s.require("lambda = 0.49: softening margin >= 0 at 1000 d", soft_in >= 0.0, soft_in);
  const auto [stab_out, soft_out] = worst_margins(0.51);
  s.require("lambda = 0.51: a margin is negative near d = 1", std::min(stab_out, soft_out) < 0.0,
            std::min(stab_out, soft_out));
  s.check("bound at d = 1", std::abs(stability_bound_lambda(1.0) - 0.5), 1e-15, stability_bound_lambda(1.0), 0.5);

  if (!lambda_admissible(lambda)) {
    const auto spec = MaterialSpec::rod(1.0, 1.0, 1.0, lambda, 0.5);
    double first = 1.0;
    for (int i = 1000; i >= 1; --i) {
      const double d = i / 1000.0;
      if (stability_margin(ConstitutiveVariant::case_i(), spec, d) < 0.0 ||
          softening_margin(ConstitutiveVariant::case_i(), spec, d) < 0.0) {
        first = d;
      }
    }
    ojson w;
    w["name"] = "lambda outside the admissible region";
    w["lambda"] = lambda;
    w["bound"] = 0.5;
    w["smallest_violating_d"] = first;
    warnings.push_back(std::move(w));
  }
}

void snapback(Suite& s, const MaterialSpec& rod) {
  const auto g = groups(rod);
  const auto i = ConstitutiveVariant::case_i();
  const auto kind = snapback_predicate(i, g.beta, g.lambda).kind;
  const auto curve = equilibrium_curve(rod, i, 201);
  bool increasing = true;
  for (std::size_t k = 2; k < curve.size(); ++k) increasing = increasing && curve[k].u_star > curve[k - 1].u_star;
  s.require("case i: u* strictly increasing iff beta > lambda (" + to_string(kind) + ")",
            increasing == (kind == SnapbackKind::Stable));

  const auto ii = ConstitutiveVariant::case_ii();
  constexpr double d0 = 1e-3;
  constexpr double h = 1e-7;
  const double slope = (u_star_of_dm(rod, ii, d0 + h) - u_star_of_dm(rod, ii, d0 - h)) / (2.0 * h);
  const bool below = g.beta < critical_beta(ii, g.lambda, d0);
  s.require("case ii: du*/dd_m < 0 at d_m = 1e-3 iff beta below the critical value", (slope < 0.0) == below, slope);

  const double root = linear_degradation_second_divergence();
  const double oracle_root =
      oracle::bisect([](double d) { return 3.0 * d + std::log1p(-d); }, {0.5, 0.999, 1e-16, 400});
  s.check("case iii: second divergence", std::abs(root - oracle_root), 1e-12, root, oracle_root);
  const auto iii = ConstitutiveVariant::case_iii();
  s.require("case iii: critical beta finite before and infinite past the divergence",
            std::isfinite(critical_beta(iii, g.lambda, root - 1e-3)) &&
                std::isinf(critical_beta(iii, g.lambda, root + 1e-3)));
}

void multipliers(Suite& s, const MaterialSpec& rod, const MaterialSpec& block) {
  const auto v = ConstitutiveVariant::case_i();
  double neg = 0.0;
  double ends = 0.0;
  double slope_err = 0.0;
  for (double d_m : {0.2, 0.5, 0.8, 0.95}) {
    const auto p = gamma2_profile(rod, v, d_m, 201);
    const double top = p.max_value();
    for (double g : p.values) neg = std::max(neg, -g / top);
    const double l_m = rod.l_c * d_m;
    const auto at = [&](double x) { return gamma2_of_damage(rod, v, d_m, std::max(0.0, d_m - x / rod.l_c)); };
    ends = std::max({ends, std::abs(at(0.0)) / top, std::abs(at(l_m)) / top});
    const double sigma = stress_of_dm(rod, v, d_m);
    double yc_max = 0.0;
    double local = 0.0;
    for (int k = 1; k < 20; ++k) {
      const double x = l_m * k / 20.0;
      constexpr double h = 1e-6;
      const double slope = (at(x + h) - at(x - h)) / (2.0 * h);
      const double d = d_m - x / rod.l_c;
      const double w = omega(v.degradation, d);
      const double y = -omega_prime(v.degradation, d) * sigma * sigma / (2.0 * rod.E * w * w);
      yc_max = std::max(yc_max, y_c(v, rod, d));
      local = std::max(local, std::abs(slope - (y - y_c(v, rod, d))));
    }
    slope_err = std::max(slope_err, local / yc_max);
  }
  s.check("rod gamma2 >= 0 (largest negative part / max)", neg, 0.0);
  s.check("rod gamma2 at band ends / max", ends, 1e-8);
  s.check("rod d gamma2/dx - (Y - Yc), relative to max Yc", slope_err, 1e-5);

  double end_res = 0.0;
  bool single = true;
  struct Probe {
    BlockPhase phase;
    double driving;
  };
  for (const auto& p : {Probe{BlockPhase::Nucleation, 0.5 * block.L}, Probe{BlockPhase::Nucleation, block.L},
                        Probe{BlockPhase::Growth, 0.5 * (block.L + block.l_c)}, Probe{BlockPhase::Growth, block.l_c},
                        Probe{BlockPhase::Propagation, 0.25 * block.L}, Probe{BlockPhase::Propagation, 0.5 * block.L}}) {
    const auto st = block_state(block, p.phase, p.driving);
    end_res = std::max(end_res, gamma2_end_residual(block, st));
    const auto prof = gamma2_profile_block(block, st, 401);
    int maxima = 0;
    for (std::size_t k = 1; k + 1 < prof.size(); ++k) {
      if (prof.values[k] > prof.values[k - 1] && prof.values[k] >= prof.values[k + 1]) ++maxima;
    }
    single = single && maxima == 1;
  }
  s.check("block gamma2 end residual / max", end_res, 1e-8);
  s.require("block gamma2 has a single interior maximum", single);
}

void traction(Suite& s, const MaterialSpec& block) {
  const double peak = std::sqrt(2.0 * block.k * block.G_0);
  double best = 0.0;
  BlockCurveOptions opt;
  opt.n_points_per_phase = 20;
  for (const auto& st : equilibrium_curve_block(block, opt)) {
    best = std::max(best, traction_profile(block, st, 201).max_value());
  }
  s.require("max traction over the curve exceeds sqrt(2 k G0) = " + format_number(peak), best > peak, best);
}

// |width - target| in units of the element containing the target.
double in_elements(const fem::Mesh1D& mesh, double width, double target) {
  const auto it = std::upper_bound(mesh.x.begin(), mesh.x.end(), target);
  const auto e = std::clamp<std::ptrdiff_t>(it - mesh.x.begin() - 1, 0, static_cast<std::ptrdiff_t>(mesh.n_elements()) - 1);
  return std::abs(width - target) / mesh.h(static_cast<std::size_t>(e));
}

void fem_suite(Suite& s, const MaterialSpec& rod, int elements) {
  const auto v = ConstitutiveVariant::case_i();
  const auto g = groups(rod);
  if (snapback_predicate(v, g.beta, g.lambda).kind != SnapbackKind::Stable) {
    s.note("skipped: beta <= lambda gives a snap-back that a displacement-driven run cannot follow");
    return;
  }
  fem::FemModel m;
  m.spec = rod;
  m.variant = v;
  m.mesh = fem::Mesh1D::centred(rod.L, elements, 1.5, true);
  const double u_end = rod.G_c / rod.sigma_c;
  const double u_ref = rod.sigma_c * rod.L / rod.E;
  const auto path = fem::run_load_path(m, fem::uniform_schedule(u_end + 0.01 * u_ref, 63));

  const double u_e = elastic_limit(rod, v);
  const auto analytic_dm = [&](double u) {
    return oracle::bisect([&](double d) { return u_star_of_dm(rod, v, d) - u; }, {0.0, 1.0 - 1e-9, 1e-14, 300});
  };
  double sigma_err = 0.0;
  double band_err = 0.0;
  double band_err_fe = 0.0;
  double diss = std::numeric_limits<double>::quiet_NaN();
  for (const auto& st : path.steps) {
    double ref = 0.0;
    if (st.u_star <= u_e) {
      ref = rod.E * st.u_star / rod.L;
    } else if (st.u_star < u_star_of_dm(rod, v, 1.0 - 1e-9)) {
      const double dm = analytic_dm(st.u_star);
      ref = stress_of_dm(rod, v, dm);
      if (st.d_max > 0.0 && st.d_max < 1.0) {
        band_err = std::max(band_err, in_elements(m.mesh, st.band_half_width, rod.l_c * dm));
        band_err_fe = std::max(band_err_fe, in_elements(m.mesh, st.band_half_width, rod.l_c * st.d_max));
      }
    }
    sigma_err = std::max(sigma_err, std::abs(st.sigma - ref) / rod.sigma_c);
    if (std::isnan(diss) && st.d_max > 0.0 && st.sigma < 0.01 * rod.sigma_c) diss = st.dissipated;
  }
  s.check("sigma(u*) against the closed form, / sigma_c", sigma_err, 0.02);
  s.check("dissipation once sigma < 0.01 sigma_c, relative to G_c", rel(diss, rod.G_c), 0.02, diss, rod.G_c);
  s.check("band half-width against l_c d_m of the closed form, in elements", band_err, 1.0);
  s.check("band half-width against l_c d_max of the same step, in elements", band_err_fe, 1.0);
}

void run_suite(ojson& suites, bool& pass, const std::string& name, const std::function<void(Suite&)>& body) {
  Suite s(name);
  try {
    body(s);
  } catch (const std::exception& e) {
    s.fail(e.what());
  }
  pass = pass && s.pass();
  suites.push_back(s.to_json());
}

}  // namespace

VerifyReport cmd_verify(const RunConfig& config) {
  const auto rod = config.rod.spec();
  const auto block = config.block.spec();
  const auto g = groups(rod);
  VerifyReport r;
  ojson suites = ojson::array();
  ojson discrepancies = ojson::array();
  ojson warnings = ojson::array();
  bool pass = true;

  run_suite(suites, pass, "block elastic limits", [&](Suite& s) { elastic_limits(s, block); });
  run_suite(suites, pass, "block phase junctions",
            [&](Suite& s) { junctions(s, block, config.phase4_quoted, discrepancies); });
  run_suite(suites, pass, "rod closed forms against oracles", [&](Suite& s) { rod_oracles(s, rod); });
  run_suite(suites, pass, "block closed forms against oracles", [&](Suite& s) { block_oracles(s, block); });
  run_suite(suites, pass, "cohesive equivalence", [&](Suite& s) { cohesive_line(s, rod); });
  run_suite(suites, pass, "work of separation", [&](Suite& s) { work_of_separation(s, block); });
  run_suite(suites, pass, "admissibility", [&](Suite& s) { admissibility(s, g.lambda, warnings); });
  run_suite(suites, pass, "snap-back classification", [&](Suite& s) { snapback(s, rod); });
  run_suite(suites, pass, "gradient multipliers", [&](Suite& s) { multipliers(s, rod, block); });
  run_suite(suites, pass, "traction relaxation", [&](Suite& s) { traction(s, block); });
  if (!config.skip_fem) {
    run_suite(suites, pass, "finite elements", [&](Suite& s) { fem_suite(s, rod, config.fem.elements); });
  }

  ojson cfg;
  cfg["rod"] = {{"E", rod.E}, {"L", rod.L}, {"sigma_c", rod.sigma_c}, {"lambda", g.lambda}, {"beta", g.beta}};
  cfg["block"] = {{"L", block.L}, {"k", block.k}, {"Gc", block.G_c}, {"G0", block.G_0}, {"lc", block.l_c}};
  cfg["fem_elements"] = config.skip_fem ? 0 : config.fem.elements;
  cfg["phase4_quoted"] = config.phase4_quoted;

  r.json["report"] = "gdl verify";
  r.json["pass"] = pass;
  r.json["config"] = cfg;
  r.json["suites"] = suites;
  r.json["discrepancies"] = discrepancies;
  r.json["warnings"] = warnings;
  r.pass = pass;
  return r;
}

}  // namespace gdl::cli
