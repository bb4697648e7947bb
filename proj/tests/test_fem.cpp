#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gdl/errors.hpp"
#include "gdl/fem.hpp"
#include "gdl/rod.hpp"

using namespace gdl;

namespace {

fem::FemModel bar(int n_elements, bool half = true) {
  fem::FemModel m;
  m.spec = MaterialSpec::rod(1.0, 1.0, 1.0, 0.4, 0.5);
  m.variant = ConstitutiveVariant::case_i();
  m.mesh = half ? fem::Mesh1D::uniform(0.0, 1.0, n_elements) : fem::Mesh1D::uniform(-1.0, 1.0, n_elements);
  return m;
}

}  // namespace

TEST_SUITE("fem") {

TEST_CASE("meshes") {
  const auto u = fem::Mesh1D::uniform(-1.0, 1.0, 4);
  CHECK(u.n_nodes() == 5);
  CHECK(u.h(2) == doctest::Approx(0.5));
  const auto g = fem::Mesh1D::centred(1.0, 10, 2.0, true);
  CHECK(g.x.front() == 0.0);
  CHECK(g.x.back() == 1.0);
  CHECK(g.h(0) < g.h(9));
  const auto w = fem::Mesh1D::centred(1.0, 10, 1.5, false);
  CHECK(w.x[5] == doctest::Approx(0.0));
  CHECK_THROWS_AS(fem::Mesh1D::centred(1.0, 9, 1.5, false), std::invalid_argument);
  fem::Mesh1D bad{{0.0, 0.5, 0.5}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("elastic displacement field is linear") {
  const auto m = bar(8, false);
  const std::vector<double> d(8, 0.0);
  const auto u = fem::solve_displacement(m, d, 0.4);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == doctest::Approx(0.4 * m.mesh.x[i]));
  for (double s : fem::element_stress(m, u, d)) CHECK(s == doctest::Approx(0.4 * (1.0 + 1e-8)));
}

TEST_CASE("a damaged element carries four times the strain at equal stress") {
  const auto m = bar(10, false);
  std::vector<double> d(10, 0.0);
  d[3] = 0.5;
  const auto u = fem::solve_displacement(m, d, 0.2);
  const double e_damaged = (u[4] - u[3]) / m.mesh.h(3);
  const double e_sound = (u[1] - u[0]) / m.mesh.h(0);
  CHECK(e_damaged / e_sound == doctest::Approx(4.0).epsilon(1e-6));
  const auto s = fem::element_stress(m, u, d);
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  CHECK(*hi - *lo < 1e-12);
}

TEST_CASE("broken element without residual stiffness is singular") {
  auto m = bar(4);
  m.options.residual_stiffness = 0.0;
  std::vector<double> d(4, 0.0);
  d[1] = 1.0;
  CHECK_THROWS_AS(fem::solve_displacement(m, d, 0.1), SingularSystemError);
}

TEST_CASE("no damage below the elastic limit") {
  const auto m = bar(20);
  const std::vector<double> d_prev(20, 0.0);
  const auto u = fem::solve_displacement(m, d_prev, 0.9);
  const auto inc = fem::solve_damage_increment(m, u, d_prev);
  for (double v : inc.d) CHECK(v == 0.0);
}

TEST_CASE("fully broken elements stay broken") {
  const auto m = bar(20);
  std::vector<double> d_prev(20, 0.0);
  d_prev[0] = 1.0;
  const auto u = fem::solve_displacement(m, d_prev, 0.5);
  const auto inc = fem::solve_damage_increment(m, u, d_prev);
  CHECK(inc.d[0] == 1.0);
}

TEST_CASE("single overloaded element spreads damage at the bound slope") {
  const auto m = bar(40);
  const std::vector<double> d_prev(40, 0.0);
  std::vector<double> u(41, 0.0);
  // All of the elongation in the first element.
  for (std::size_t i = 1; i < u.size(); ++i) u[i] = 0.3;
  const auto inc = fem::solve_damage_increment(m, u, d_prev);
  CHECK(inc.d[0] > 0.0);
  const double slope = m.mesh.h(0) / m.spec.l_c;
  std::size_t k = 1;
  while (k < inc.d.size() && inc.d[k] > 0.0 && inc.d[k - 1] - inc.d[k] == doctest::Approx(slope)) ++k;
  CHECK(k > 1);
  for (std::size_t e = 0; e + 1 < k - 1; ++e) CHECK(inc.lagrange_grad[e] > 0.0);
}

TEST_CASE("exact chain and projected gradient give the same damage increment") {
  auto m = bar(30);
  std::vector<double> d_prev(30, 0.0);
  d_prev[0] = 0.2;
  d_prev[1] = 0.1;
  const auto u = fem::solve_displacement(m, d_prev, 1.1);
  const auto exact = fem::solve_damage_increment(m, u, d_prev);
  m.options.damage_solver = fem::DamageSolver::ProjectedGradient;
  const auto pg = fem::solve_damage_increment(m, u, d_prev);
  for (std::size_t e = 0; e < exact.d.size(); ++e) CHECK(pg.d[e] == doctest::Approx(exact.d[e]).epsilon(1e-6));
}

TEST_CASE("elastic load path") {
  const auto m = bar(10);
  const auto path = fem::run_load_path(m, fem::uniform_schedule(0.9, 3));
  REQUIRE(path.steps.size() == 4);
  for (const auto& s : path.steps) {
    CHECK(s.d_max == 0.0);
    CHECK(s.sigma == doctest::Approx(s.u_star * (1.0 + 1e-8)));
    CHECK(s.dissipated == 0.0);
    CHECK(s.work == doctest::Approx(s.stored).epsilon(1e-9));
  }
}

TEST_CASE("short softening path keeps its invariants") {
  auto m = bar(40);
  m.mesh = fem::Mesh1D::centred(1.0, 40, 1.5, true);
  std::vector<double> schedule;
  for (int k = 1; k <= 12; ++k) schedule.push_back(0.1 * k);
  const auto path = fem::run_load_path(m, schedule, true);
  REQUIRE(path.states.size() == path.steps.size());
  for (std::size_t k = 0; k < path.states.size(); ++k) {
    const auto& st = path.states[k];
    CHECK_NOTHROW(st.check(m.mesh, m.spec.l_c, 1e-9));
    const auto s = fem::element_stress(m, st.u, st.d);
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    CHECK(*hi - *lo < 1e-6);
  }
  const auto& last = path.steps.back();
  CHECK(last.d_max > 0.0);
  CHECK(last.sigma < 1.0);
  CHECK(last.band_half_width > 0.0);
  for (std::size_t k = 1; k < path.steps.size(); ++k) {
    CHECK(path.steps[k].dissipated >= path.steps[k - 1].dissipated);
  }
}

TEST_CASE("external work balances stored energy plus dissipation") {
  auto m = bar(40);
  m.mesh = fem::Mesh1D::centred(1.0, 40, 1.5, true);
  std::vector<double> schedule;
  for (int k = 1; k <= 21; ++k) schedule.push_back(0.05 * k);
  const auto path = fem::run_load_path(m, schedule, true);
  const auto& start = path.states.back();
  REQUIRE(*std::max_element(start.d.begin(), start.d.end()) > 0.0);
  const double u_a = start.load_factor;
  const double u_b = u_a + 0.03;
  const auto end = fem::staggered_step(m, start.d, u_b);
  const double w = fem::external_work(m, start.d, u_a, u_b, 1e-8);
  const double balance = fem::stored_energy(m, end.u, end.d) - fem::stored_energy(m, start.u, start.d) +
                         fem::dissipation(m, end.d, start.d);
  CHECK(w == doctest::Approx(balance).epsilon(1e-6));
}

}  // TEST_SUITE
