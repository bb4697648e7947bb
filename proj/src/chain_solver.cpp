#include "gdl/chain_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "gdl/errors.hpp"

namespace gdl::chain {

namespace {

// Stage data of the forward pass: domain of the cost-to-go V_i and its minimizer.
struct Interval {
  double lo;
  double hi;
};

struct Stage {
  double lo;
  double hi;
  double argmin;
};

class ForwardPass {
 public:
  explicit ForwardPass(const Problem& p) : p_(p) { stages_.reserve(p.size()); }

  // V_i'(y): f_i'(y) plus the derivative of the min-convolution of V_{i-1}
  // with the slack window, which is V_{i-1}'(y +- s) outside the flat part.
  double cost_to_go_derivative(std::size_t i, double y) const {
    double total = 0.0;
    for (;;) {
      total += p_.derivative(i, y);
      if (i == 0) return total;
      const double s = p_.slack[i - 1];
      const double xs = stages_[i - 1].argmin;
      if (y + s < xs) {
        y += s;
      } else if (y - s > xs) {
        y -= s;
      } else {
        return total;
      }
      --i;
    }
  }

  void run(double x_tol) {
    for (std::size_t i = 0; i < p_.size(); ++i) {
      double lo = p_.lower[i];
      double hi = p_.upper[i];
      if (i > 0) {
        lo = std::max(lo, stages_[i - 1].lo - p_.slack[i - 1]);
        hi = std::min(hi, stages_[i - 1].hi + p_.slack[i - 1]);
      }
      if (lo > hi) throw std::invalid_argument("chain problem has an empty feasible set at node " + std::to_string(i));
      stages_.push_back({lo, hi, lo});
      stages_.back().argmin = minimize_stage(i, x_tol);
    }
  }

  std::vector<double> back_substitute() const {
    const std::size_t n = stages_.size();
    std::vector<double> x(n);
    x[n - 1] = stages_[n - 1].argmin;
    for (std::size_t i = n - 1; i-- > 0;) {
      const double s = p_.slack[i];
      x[i] = std::clamp(stages_[i].argmin, x[i + 1] - s, x[i + 1] + s);
    }
    return x;
  }

 private:
  double minimize_stage(std::size_t i, double x_tol) const {
    const Stage& st = stages_[i];
    if (st.lo == st.hi) return st.lo;
    const auto dv = [&](double y) { return cost_to_go_derivative(i, y); };
    const double d_lo = dv(st.lo);
    if (d_lo >= 0.0) return st.lo;
    const double d_hi = dv(st.hi);
    if (d_hi <= 0.0) return st.hi;
    std::uintmax_t max_iter = 200;
    const auto tol = [x_tol](double a, double b) { return std::abs(b - a) <= x_tol; };
    const auto bracket = boost::math::tools::toms748_solve(dv, st.lo, st.hi, d_lo, d_hi, tol, max_iter);
    return 0.5 * (bracket.first + bracket.second);
  }

  const Problem& p_;
  std::vector<Stage> stages_;
};

}  // namespace

void Problem::validate() const {
  const std::size_t n = lower.size();
  if (n == 0) throw std::invalid_argument("chain problem needs at least one unknown");
  if (upper.size() != n || slack.size() + 1 != n) throw std::invalid_argument("chain problem size mismatch");
  if (!derivative) throw std::invalid_argument("chain problem needs a derivative");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i])) throw std::invalid_argument("chain bounds crossed at node " + std::to_string(i));
  }
  for (double s : slack) {
    if (!(s >= 0.0)) throw std::invalid_argument("chain slack must be non-negative");
  }
}

Solution solve_exact(const Problem& problem, double x_tol) {
  problem.validate();
  ForwardPass pass(problem);
  pass.run(x_tol);
  Solution sol;
  sol.x = pass.back_substitute();
  sol.iterations = 1;
  recover_multipliers(problem, sol);
  return sol;
}

std::vector<double> project(const Problem& problem, const std::vector<double>& z) {
  if (z.size() != problem.size()) throw std::invalid_argument("projection point has the wrong size");
  Problem q;
  q.lower = problem.lower;
  q.upper = problem.upper;
  q.slack = problem.slack;
  q.derivative = [&z](std::size_t i, double y) { return y - z[i]; };
  q.validate();
  ForwardPass pass(q);
  pass.run(1e-15);
  return pass.back_substitute();
}

Solution solve_projected_gradient(const Problem& problem, std::vector<double> start,
                                  const ProjectedGradientOptions& options) {
  problem.validate();
  const std::size_t n = problem.size();
  std::vector<double> x = project(problem, start);
  std::vector<double> g(n), gy(n), trial(n), y(n);
  double tau = options.initial_step;

  for (int it = 0; it < options.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) g[i] = problem.derivative(i, x[i]);
    for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - g[i];
    const auto unit = project(problem, trial);
    double stationarity = 0.0;
    for (std::size_t i = 0; i < n; ++i) stationarity = std::max(stationarity, std::abs(unit[i] - x[i]));
    if (stationarity <= options.tol) {
      Solution sol;
      sol.x = std::move(x);
      sol.iterations = it;
      recover_multipliers(problem, sol);
      return sol;
    }
    // Backtracking on (g(y) - g(x)).(y - x) <= |y - x|^2 / (2 tau), which for
    // convex f bounds f(y) - f(x) - g.(y - x) without cancellation.
    for (int back = 0;; ++back) {
      if (back > 200) throw ConvergenceError("projected gradient line search failed");
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - tau * g[i];
      y = project(problem, trial);
      double curvature = 0.0;
      double step2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double step = y[i] - x[i];
        gy[i] = problem.derivative(i, y[i]);
        curvature += (gy[i] - g[i]) * step;
        step2 += step * step;
      }
      if (curvature <= step2 / (2.0 * tau)) {
        x = y;
        break;
      }
      tau *= 0.5;
    }
    tau *= 2.0;
  }
  throw ConvergenceError("projected gradient did not converge in " + std::to_string(options.max_iter) +
                         " iterations");
}

void recover_multipliers(const Problem& problem, Solution& sol, double active_tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = problem.size();
  const auto& x = sol.x;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = problem.derivative(i, x[i]);

  // Stationarity reads t_i - t_{i-1} - g_i = nu_i with t the signed edge
  // force (t_{-1} = t_{n-1} = 0) and nu_i the box multiplier, whose sign
  // depends on which bound is active.
  std::vector<Interval> node(n), edge(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const bool up = x[i] >= problem.upper[i] - active_tol;
    const bool lo = x[i] <= problem.lower[i] + active_tol;
    node[i] = {lo ? -inf : 0.0, up ? inf : 0.0};
  }
  std::vector<bool> active(n - 1);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double jump = x[e + 1] - x[e];
    active[e] = std::abs(jump) >= problem.slack[e] - active_tol;
    if (!active[e]) {
      edge[e] = {0.0, 0.0};
    } else if (problem.slack[e] == 0.0) {
      edge[e] = {-inf, inf};
    } else {
      edge[e] = jump > 0.0 ? Interval{0.0, inf} : Interval{-inf, 0.0};
    }
  }

  double residual = 0.0;
  const auto meet = [&residual](Interval a, Interval b) {
    Interval c{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
    if (c.lo > c.hi) {
      residual = std::max(residual, c.lo - c.hi);
      const double mid = a.lo > b.hi ? b.hi : b.lo;
      c = {mid, mid};
    }
    return c;
  };
  const auto closest_to_zero = [](Interval a) { return std::clamp(0.0, a.lo, a.hi); };

  // Forward: reachable values of each t_i.
  std::vector<Interval> reach(n - 1);
  Interval prev{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    reach[i] = meet({prev.lo + g[i] + node[i].lo, prev.hi + g[i] + node[i].hi}, edge[i]);
    prev = reach[i];
  }
  // Backward: pick each t_i compatible with its successor.
  std::vector<double> t(n - 1, 0.0);
  double next = 0.0;
  for (std::size_t i = n; i-- > 1;) {
    // t_{i-1} in next - g_i - node_i
    const Interval allowed{next - g[i] - node[i].hi, next - g[i] - node[i].lo};
    t[i - 1] = closest_to_zero(meet(reach[i - 1], allowed));
    next = t[i - 1];
  }
  if (n == 1) {
    const double net = -g[0];
    residual = std::max({residual, node[0].lo - net, net - node[0].hi});
  }

  sol.edge_flow = t;
  sol.edge_multiplier.assign(n - 1, 0.0);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    if (active[e]) sol.edge_multiplier[e] = std::abs(t[e]);
  }
  sol.upper_multiplier.assign(n, 0.0);
  sol.lower_multiplier.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double inflow = i > 0 ? t[i - 1] : 0.0;
    const double outflow = i + 1 < n ? t[i] : 0.0;
    const double net = outflow - inflow - g[i];
    if (node[i].hi > 0.0) sol.upper_multiplier[i] = std::max(net, 0.0);
    if (node[i].lo < 0.0) sol.lower_multiplier[i] = std::max(-net, 0.0);
    residual = std::max({residual, node[i].lo - net, net - node[i].hi});
  }
  sol.kkt_residual = residual;
}

}  // namespace gdl::chain
