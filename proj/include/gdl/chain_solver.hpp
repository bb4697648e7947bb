#pragma once

#include <functional>
#include <vector>

/// Separable minimization on a chain of unknowns x_0..x_{n-1}:
///
///   minimize  sum_i f_i(x_i)
///   s.t.      lower_i <= x_i <= upper_i
///             |x_{i+1} - x_i| <= slack_i
///
/// which is the shape of the damage subproblem at frozen displacements
/// (box = irreversibility and d <= 1, slack = h_e / l_c).
namespace gdl::chain {

struct Problem {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> slack;  ///< one per edge, size n - 1
  /// f_i'(x). Must be non-decreasing in x for the exact solver to return the
  /// global minimizer.
  std::function<double(std::size_t, double)> derivative;

  std::size_t size() const { return lower.size(); }
  /// Throws std::invalid_argument on inconsistent sizes or an empty feasible set.
  void validate() const;
};

struct Solution {
  std::vector<double> x;
  /// Signed edge force t_e; t_e >= 0 when x_{e+1} - x_e = +slack is active,
  /// t_e <= 0 when x_e - x_{e+1} = slack is active, 0 otherwise.
  std::vector<double> edge_flow;
  std::vector<double> edge_multiplier;   ///< |t_e| on active edges
  std::vector<double> upper_multiplier;  ///< >= 0, nonzero only where x = upper
  std::vector<double> lower_multiplier;  ///< >= 0, nonzero only where x = lower
  /// Largest violation of stationarity or of a multiplier sign condition.
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// Exact solver: forward dynamic programming over the chain with the
/// derivative of each cost-to-go evaluated recursively, then back
/// substitution. Each stage minimizer is located by bisection to x_tol.
Solution solve_exact(const Problem& problem, double x_tol = 1e-15);

struct ProjectedGradientOptions {
  double tol = 1e-10;  ///< on the projected-gradient step ||x - P(x - g)||_inf
  int max_iter = 20000;
  double initial_step = 1.0;
};

/// Projected gradient with backtracking. The projection onto the feasible
/// polyhedron is itself a chain problem and is solved exactly.
Solution solve_projected_gradient(const Problem& problem, std::vector<double> start,
                                  const ProjectedGradientOptions& options = {});

/// Euclidean projection of z onto the feasible set of the problem.
std::vector<double> project(const Problem& problem, const std::vector<double>& z);

/// Fills the multiplier fields of a solution from its primal x and the
/// problem derivatives. Constraints within active_tol of their bound count as active.
void recover_multipliers(const Problem& problem, Solution& solution, double active_tol = 1e-12);

}  // namespace gdl::chain
