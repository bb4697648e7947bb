#pragma once

#include <span>
#include <vector>

#include "gdl/material.hpp"

/// Finite elements for the damageable bar with the damage gradient bound,
/// solved by alternating minimization. Displacements are linear per element,
/// damage is constant per element. The gradient bound is imposed between
/// neighbouring elements: |d_{e+1} - d_e| <= (h_e + h_{e+1}) / (2 l_c).
///
/// The mesh covers either the whole bar [-L, L] or the half bar [0, L]; in
/// the second case x = 0 is a symmetry plane and the energy tallies are
/// doubled so that they always refer to the whole bar.
namespace gdl::fem {

struct Mesh1D {
  std::vector<double> x;  ///< node abscissae, strictly increasing

  /// n_elements equal elements on [a, b].
  static Mesh1D uniform(double a, double b, int n_elements);
  /// n_elements elements refined towards x = 0: x = L t^power for t uniform
  /// on [0, 1] (half bar) or on [-1, 1] with the sign kept (whole bar).
  static Mesh1D centred(double L, int n_elements, double power, bool half_bar);

  std::size_t n_nodes() const { return x.size(); }
  std::size_t n_elements() const { return x.size() - 1; }
  double h(std::size_t e) const { return x[e + 1] - x[e]; }
  double centre(std::size_t e) const { return 0.5 * (x[e] + x[e + 1]); }

  /// Throws std::invalid_argument unless there are >= 2 nodes and all h > 0.
  void validate() const;
};

struct FemState {
  std::vector<double> u;              ///< per node
  std::vector<double> d;              ///< per element
  std::vector<double> d_prev;         ///< per element, last converged step
  std::vector<double> lagrange_grad;  ///< per element interface, >= 0
  std::vector<double> lagrange_box;   ///< per element, >= 0, nonzero only at d = 1
  double load_factor = 0.0;           ///< prescribed end displacement u*
  double kkt_residual = 0.0;          ///< of the last damage solve, relative

  /// Checks the box, irreversibility and gradient-bound invariants and the
  /// multiplier signs; throws InconsistencyError on violation beyond tol.
  void check(const Mesh1D& mesh, double l_c, double tol = 1e-10) const;
};

enum class DamageSolver { ExactChain, ProjectedGradient };

struct FemOptions {
  double residual_stiffness = 1e-8;  ///< omega_min
  /// Relative strength reduction of the element at the bar centre.
  double seed_reduction = 1e-3;
  double staggered_tol = 1e-8;
  int max_staggered_iterations = 20000;
  int max_step_bisections = 6;
  DamageSolver damage_solver = DamageSolver::ExactChain;
  /// Bound on the KKT residual of each damage solve, relative to the
  /// largest element threshold force.
  double kkt_tol = 1e-8;
};

struct FemModel {
  Mesh1D mesh;
  MaterialSpec spec;
  ConstitutiveVariant variant;
  FemOptions options;

  /// Per-element factor on Y_c; 1 everywhere except the element at x = 0.
  std::vector<double> strength_factor() const;
  /// 2 for a half-bar mesh, 1 for the whole bar.
  double symmetry_factor() const;
  void validate() const;
};

/// Nodal displacements for given element damage. The ends are moved to
/// u* x_0 / L and u* x_n / L: -u* and u* on [-L, L], 0 and u* on [0, L].
/// Throws SingularSystemError when an element has zero stiffness.
std::vector<double> solve_displacement(const FemModel& model, std::span<const double> d, double u_star);

/// Element stresses E (w(d_e) + omega_min) eps_e.
std::vector<double> element_stress(const FemModel& model, std::span<const double> u, std::span<const double> d);

struct DamageIncrement {
  std::vector<double> d;
  std::vector<double> lagrange_grad;
  std::vector<double> lagrange_box;
  double kkt_residual = 0.0;  ///< relative
  int iterations = 0;
};

/// Minimizes the incremental energy over d at frozen u subject to
/// d_prev <= d <= 1 and the gradient bound.
DamageIncrement solve_damage_increment(const FemModel& model, std::span<const double> u,
                                       std::span<const double> d_prev);

/// Strain energy of the whole bar.
double stored_energy(const FemModel& model, std::span<const double> u, std::span<const double> d);

/// Dissipation of the whole bar between damage fields d_ref and d,
/// sum_e h_e f_e (H(d_e) - H(d_ref,e)) with H the antiderivative of Y_c.
double dissipation(const FemModel& model, std::span<const double> d, std::span<const double> d_ref);

struct StepRecord {
  double u_star = 0.0;
  double sigma = 0.0;       ///< mean element stress
  double stored = 0.0;
  double dissipated = 0.0;  ///< cumulative
  double work = 0.0;        ///< cumulative external work, trapezoidal in u*
  double d_max = 0.0;
  double band_half_width = 0.0;
  double kkt_residual = 0.0;
  int staggered_iterations = 0;
  int bisections = 0;
};

struct LoadPath {
  std::vector<StepRecord> steps;  ///< steps[0] is the unloaded state
  std::vector<FemState> states;   ///< parallel to steps when kept
};

/// Staggered fixed point at load u_star starting from damage d_prev.
/// Throws ConvergenceError.
FemState staggered_step(const FemModel& model, std::span<const double> d_prev, double u_star,
                        int* iterations = nullptr);

/// Runs a strictly increasing schedule of end displacements. A step that
/// fails to converge is halved, up to options.max_step_bisections times.
LoadPath run_load_path(const FemModel& model, const std::vector<double>& schedule, bool keep_states = false);

/// n_steps equal increments of the end displacement up to u_max.
std::vector<double> uniform_schedule(double u_max, int n_steps);

/// Half-width of the damaged zone around the peak, measured to the outer
/// edges of the damaged elements.
double band_half_width(const Mesh1D& mesh, std::span<const double> d, double threshold = 1e-12);

/// External work of the whole bar between u_a and u_b, integrating the
/// reaction over a family of staggered solutions that all start from d_prev.
double external_work(const FemModel& model, std::span<const double> d_prev, double u_a, double u_b,
                     double rel_tol = 1e-10);

}  // namespace gdl::fem
