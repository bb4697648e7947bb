#include "gdl/fem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gdl/chain_solver.hpp"
#include "gdl/errors.hpp"
#include "gdl/oracle.hpp"

namespace gdl::fem {

namespace {

double end_displacement(const FemModel& model, double x, double u_star) { return u_star * x / model.spec.L; }

// Elongation of the whole bar.
double elongation(double u_star) { return 2.0 * u_star; }

void require_size(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) throw std::invalid_argument(std::string(what) + " has the wrong size");
}

double mean_stress(const FemModel& model, const FemState& st) {
  const auto s = element_stress(model, st.u, st.d);
  double mean = 0.0;
  for (double v : s) mean += v;
  return mean / static_cast<double>(s.size());
}

}  // namespace

Mesh1D Mesh1D::uniform(double a, double b, int n_elements) {
  if (n_elements < 1) throw std::invalid_argument("mesh needs at least one element");
  if (!(a < b)) throw std::invalid_argument("mesh needs a < b");
  Mesh1D mesh;
  mesh.x.resize(static_cast<std::size_t>(n_elements) + 1);
  for (int i = 0; i <= n_elements; ++i) mesh.x[i] = a + (b - a) * i / n_elements;
  mesh.x.back() = b;
  return mesh;
}

Mesh1D Mesh1D::centred(double L, int n_elements, double power, bool half_bar) {
  if (!(power >= 1.0)) throw std::invalid_argument("mesh grading power must be >= 1");
  if (!half_bar && n_elements % 2 != 0) throw std::invalid_argument("whole-bar graded mesh needs an even element count");
  Mesh1D mesh = half_bar ? uniform(0.0, 1.0, n_elements) : uniform(-1.0, 1.0, n_elements);
  for (double& x : mesh.x) x = std::copysign(L * std::pow(std::abs(x), power), x);
  mesh.x.front() = half_bar ? 0.0 : -L;
  mesh.x.back() = L;
  return mesh;
}

void Mesh1D::validate() const {
  if (x.size() < 2) throw std::invalid_argument("mesh needs at least two nodes");
  for (std::size_t e = 0; e + 1 < x.size(); ++e) {
    if (!(h(e) > 0.0)) throw std::invalid_argument("mesh element sizes must be positive");
  }
}

void FemState::check(const Mesh1D& mesh, double l_c, double tol) const {
  const std::size_t ne = mesh.n_elements();
  if (u.size() != mesh.n_nodes() || d.size() != ne || d_prev.size() != ne) {
    throw InconsistencyError("state size mismatch");
  }
  for (std::size_t e = 0; e < ne; ++e) {
    if (d[e] < -tol || d[e] > 1.0 + tol) throw InconsistencyError("damage outside [0, 1]");
    if (d[e] < d_prev[e] - tol) throw InconsistencyError("damage decreased");
  }
  for (std::size_t e = 0; e + 1 < ne; ++e) {
    const double gap = mesh.centre(e + 1) - mesh.centre(e);
    if (std::abs(d[e + 1] - d[e]) > gap / l_c + tol) throw InconsistencyError("damage gradient bound violated");
  }
  for (double v : lagrange_grad) {
    if (v < 0.0) throw InconsistencyError("negative gradient multiplier");
  }
  for (std::size_t e = 0; e < lagrange_box.size(); ++e) {
    if (lagrange_box[e] < 0.0) throw InconsistencyError("negative box multiplier");
    if (lagrange_box[e] > 0.0 && d[e] < 1.0 - tol) throw InconsistencyError("box multiplier active below d = 1");
  }
}

std::vector<double> FemModel::strength_factor() const {
  std::vector<double> f(mesh.n_elements(), 1.0);
  if (options.seed_reduction > 0.0) {
    std::size_t best = 0;
    for (std::size_t e = 1; e < f.size(); ++e) {
      if (std::abs(mesh.centre(e)) < std::abs(mesh.centre(best))) best = e;
    }
    const double r = 1.0 - options.seed_reduction;
    f[best] = r * r;
  }
  return f;
}

double FemModel::symmetry_factor() const { return mesh.x.front() == 0.0 ? 2.0 : 1.0; }

void FemModel::validate() const {
  mesh.validate();
  spec.validate();
  if (variant.threshold == Threshold::BlockBilinear) {
    throw UnsupportedRegime("the bar solver does not take the interface threshold");
  }
  if (!(options.residual_stiffness >= 0.0)) throw std::invalid_argument("residual stiffness must be >= 0");
  if (!(options.seed_reduction >= 0.0 && options.seed_reduction < 1.0)) {
    throw std::invalid_argument("seed reduction must lie in [0, 1)");
  }
  if (!(options.staggered_tol > 0.0)) throw std::invalid_argument("staggered tolerance must be positive");
  const bool whole = mesh.x.front() == -spec.L && mesh.x.back() == spec.L;
  const bool half = mesh.x.front() == 0.0 && mesh.x.back() == spec.L;
  if (!whole && !half) throw std::invalid_argument("mesh must span [-L, L] or [0, L]");
}

std::vector<double> solve_displacement(const FemModel& model, std::span<const double> d, double u_star) {
  const auto& mesh = model.mesh;
  const std::size_t n = mesh.n_nodes();
  const std::size_t ne = n - 1;
  require_size(d, ne, "damage");
  std::vector<double> k(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    k[e] = model.spec.E / mesh.h(e) * (omega(model.variant.degradation, d[e]) + model.options.residual_stiffness);
    if (!(k[e] > 0.0)) {
      throw SingularSystemError("element " + std::to_string(e) + " has zero stiffness; set a residual stiffness");
    }
  }
  std::vector<double> u(n);
  u.front() = end_displacement(model, mesh.x.front(), u_star);
  u.back() = end_displacement(model, mesh.x.back(), u_star);
  if (n == 2) return u;

  // Thomas algorithm on the interior nodes 1..n-2.
  const std::size_t m = n - 2;
  std::vector<double> c(m), r(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = j + 1;
    const double lower = j > 0 ? -k[i - 1] : 0.0;
    double rhs = 0.0;
    if (i == 1) rhs += k[0] * u.front();
    if (i == n - 2) rhs += k[n - 2] * u.back();
    const double denom = k[i - 1] + k[i] - lower * (j > 0 ? c[j - 1] : 0.0);
    c[j] = -k[i] / denom;
    r[j] = (rhs - lower * (j > 0 ? r[j - 1] : 0.0)) / denom;
  }
  u[m] = r[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) u[j + 1] = r[j] - c[j] * u[j + 2];
  return u;
}

std::vector<double> element_stress(const FemModel& model, std::span<const double> u, std::span<const double> d) {
  const auto& mesh = model.mesh;
  require_size(u, mesh.n_nodes(), "displacement");
  require_size(d, mesh.n_elements(), "damage");
  std::vector<double> s(mesh.n_elements());
  for (std::size_t e = 0; e < s.size(); ++e) {
    const double w = omega(model.variant.degradation, d[e]) + model.options.residual_stiffness;
    s[e] = model.spec.E * w * (u[e + 1] - u[e]) / mesh.h(e);
  }
  return s;
}

DamageIncrement solve_damage_increment(const FemModel& model, std::span<const double> u,
                                       std::span<const double> d_prev) {
  const auto& mesh = model.mesh;
  const std::size_t ne = mesh.n_elements();
  require_size(u, mesh.n_nodes(), "displacement");
  require_size(d_prev, ne, "previous damage");
  const auto kind = model.variant.degradation;
  const auto& variant = model.variant;
  const auto& spec = model.spec;

  // f_e(d) = a_e w(d) + m_e (H(d) - H(d_prev)).
  std::vector<double> a(ne), m(ne);
  const auto factor = model.strength_factor();
  for (std::size_t e = 0; e < ne; ++e) {
    const double eps = (u[e + 1] - u[e]) / mesh.h(e);
    a[e] = 0.5 * spec.E * eps * eps * mesh.h(e);
    m[e] = mesh.h(e) * factor[e];
  }

  chain::Problem problem;
  problem.lower.assign(d_prev.begin(), d_prev.end());
  problem.upper.assign(ne, 1.0);
  problem.slack.resize(ne - 1);
  for (std::size_t e = 0; e + 1 < ne; ++e) problem.slack[e] = (mesh.centre(e + 1) - mesh.centre(e)) / spec.l_c;
  problem.derivative = [&](std::size_t e, double x) {
    return a[e] * omega_prime(kind, x) + m[e] * y_c(variant, spec, x);
  };

  chain::Solution sol;
  if (model.options.damage_solver == DamageSolver::ExactChain) {
    sol = chain::solve_exact(problem);
  } else {
    chain::ProjectedGradientOptions pg;
    pg.tol = 1e-12;
    pg.initial_step = 1.0 / (spec.E * spec.L);
    sol = chain::solve_projected_gradient(problem, std::vector<double>(d_prev.begin(), d_prev.end()), pg);
  }

  double scale = 0.0;
  for (std::size_t e = 0; e < ne; ++e) scale = std::max(scale, m[e] * y_c(variant, spec, sol.x[e]));
  DamageIncrement out;
  out.kkt_residual = scale > 0.0 ? sol.kkt_residual / scale : sol.kkt_residual;
  if (out.kkt_residual > model.options.kkt_tol) {
    throw ConvergenceError("damage increment KKT residual " + std::to_string(out.kkt_residual) + " above tolerance");
  }
  out.d = std::move(sol.x);
  out.lagrange_grad = std::move(sol.edge_multiplier);
  out.lagrange_box.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) out.lagrange_box[e] = sol.upper_multiplier[e] / mesh.h(e);
  out.iterations = sol.iterations;
  return out;
}

double stored_energy(const FemModel& model, std::span<const double> u, std::span<const double> d) {
  const auto s = element_stress(model, u, d);
  double total = 0.0;
  for (std::size_t e = 0; e < s.size(); ++e) total += 0.5 * s[e] * (u[e + 1] - u[e]);
  return model.symmetry_factor() * total;
}

double dissipation(const FemModel& model, std::span<const double> d, std::span<const double> d_ref) {
  const auto& mesh = model.mesh;
  require_size(d, mesh.n_elements(), "damage");
  require_size(d_ref, mesh.n_elements(), "reference damage");
  const auto factor = model.strength_factor();
  double total = 0.0;
  for (std::size_t e = 0; e < mesh.n_elements(); ++e) {
    if (d[e] == d_ref[e]) continue;
    total += mesh.h(e) * factor[e] *
             (y_c_integral(model.variant, model.spec, d[e]) - y_c_integral(model.variant, model.spec, d_ref[e]));
  }
  return model.symmetry_factor() * total;
}

FemState staggered_step(const FemModel& model, std::span<const double> d_prev, double u_star, int* iterations) {
  require_size(d_prev, model.mesh.n_elements(), "previous damage");
  std::vector<double> d(d_prev.begin(), d_prev.end());
  std::vector<double> u = solve_displacement(model, d, u_star);
  for (int it = 1; it <= model.options.max_staggered_iterations; ++it) {
    auto inc = solve_damage_increment(model, u, d_prev);
    auto u_new = solve_displacement(model, inc.d, u_star);
    double change_d = 0.0;
    double change_u = 0.0;
    double u_scale = 0.0;
    for (std::size_t e = 0; e < d.size(); ++e) change_d = std::max(change_d, std::abs(inc.d[e] - d[e]));
    for (std::size_t i = 0; i < u.size(); ++i) {
      change_u = std::max(change_u, std::abs(u_new[i] - u[i]));
      u_scale = std::max(u_scale, std::abs(u_new[i]));
    }
    const double change = std::max(change_d, u_scale > 0.0 ? change_u / u_scale : change_u);
    d = std::move(inc.d);
    u = std::move(u_new);
    if (change <= model.options.staggered_tol) {
      if (iterations) *iterations = it;
      FemState st;
      st.u = std::move(u);
      st.d = std::move(d);
      st.d_prev.assign(d_prev.begin(), d_prev.end());
      st.lagrange_grad = std::move(inc.lagrange_grad);
      st.lagrange_box = std::move(inc.lagrange_box);
      st.load_factor = u_star;
      st.kkt_residual = inc.kkt_residual;
      return st;
    }
  }
  throw ConvergenceError("staggered iterations did not converge at u* = " + std::to_string(u_star));
}

double band_half_width(const Mesh1D& mesh, std::span<const double> d, double threshold) {
  require_size(d, mesh.n_elements(), "damage");
  const std::size_t peak = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  if (d[peak] <= threshold) return 0.0;
  std::size_t last = peak;
  while (last + 1 < d.size() && d[last + 1] > threshold) ++last;
  std::size_t first = peak;
  while (first > 0 && d[first - 1] > threshold) --first;
  if (mesh.x.front() == 0.0 && first == 0) return mesh.x[last + 1];
  return 0.5 * (mesh.x[last + 1] - mesh.x[first]);
}

double external_work(const FemModel& model, std::span<const double> d_prev, double u_a, double u_b,
                     double rel_tol) {
  FemModel tight = model;
  tight.options.staggered_tol = std::min(model.options.staggered_tol, 1e-13);
  tight.options.max_staggered_iterations = std::max(model.options.max_staggered_iterations, 2000000);
  const auto force = [&](double u_star) {
    return mean_stress(tight, staggered_step(tight, d_prev, u_star)) * 2.0;
  };
  oracle::QuadratureConfig config;
  config.rel_tol = rel_tol;
  config.abs_tol = 1e-300;
  config.max_depth = 30;
  return oracle::integrate(force, u_a, u_b, config).value;
}

std::vector<double> uniform_schedule(double u_max, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("schedule needs at least one step");
  if (!(u_max > 0.0)) throw std::invalid_argument("schedule needs u_max > 0");
  std::vector<double> s(static_cast<std::size_t>(n_steps));
  for (int i = 0; i < n_steps; ++i) s[i] = u_max * (i + 1) / n_steps;
  s.back() = u_max;
  return s;
}

LoadPath run_load_path(const FemModel& model, const std::vector<double>& schedule, bool keep_states) {
  model.validate();
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] >= 0.0) || (i > 0 && !(schedule[i] > schedule[i - 1]))) {
      throw std::invalid_argument("load schedule must be non-negative and strictly increasing");
    }
  }
  const std::size_t ne = model.mesh.n_elements();
  const std::vector<double> zero(ne, 0.0);

  LoadPath path;
  FemState current;
  current.d = zero;
  current.d_prev = zero;
  current.u = solve_displacement(model, zero, 0.0);
  current.lagrange_grad.assign(ne - 1, 0.0);
  current.lagrange_box.assign(ne, 0.0);
  path.steps.push_back({});
  if (keep_states) path.states.push_back(current);

  const auto record = [&](FemState st, int iterations, int depth) {
    const auto& prev = path.steps.back();
    StepRecord r;
    r.u_star = st.load_factor;
    r.sigma = mean_stress(model, st);
    r.stored = stored_energy(model, st.u, st.d);
    r.dissipated = dissipation(model, st.d, zero);
    r.work = prev.work + 0.5 * (prev.sigma + r.sigma) * (elongation(r.u_star) - elongation(prev.u_star));
    r.d_max = *std::max_element(st.d.begin(), st.d.end());
    r.band_half_width = band_half_width(model.mesh, st.d);
    r.kkt_residual = st.kkt_residual;
    r.staggered_iterations = iterations;
    r.bisections = depth;
    path.steps.push_back(r);
    current = std::move(st);
    if (keep_states) path.states.push_back(current);
  };

  const auto advance = [&](auto&& self, double from, double to, int depth) -> void {
    int iterations = 0;
    try {
      auto st = staggered_step(model, current.d, to, &iterations);
      record(std::move(st), iterations, depth);
    } catch (const ConvergenceError& err) {
      if (depth >= model.options.max_step_bisections) {
        throw ConvergenceError(std::string("step to u* = ") + std::to_string(to) + " failed after " +
                               std::to_string(depth) + " bisections: " + err.what());
      }
      const double mid = 0.5 * (from + to);
      self(self, from, mid, depth + 1);
      self(self, mid, to, depth + 1);
    }
  };

  double from = 0.0;
  for (double target : schedule) {
    if (target == 0.0) continue;
    advance(advance, from, target, 0);
    from = target;
  }
  return path;
}

}  // namespace gdl::fem
