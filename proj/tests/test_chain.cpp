#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "gdl/chain_solver.hpp"

using namespace gdl;

namespace {

// Random strictly convex separable problem: f_i = c_i/2 (x - z_i)^2 + b_i x^4.
chain::Problem random_problem(std::mt19937& rng, std::size_t n, std::vector<double>& c, std::vector<double>& z,
                              std::vector<double>& b) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  c.resize(n);
  z.resize(n);
  b.resize(n);
  chain::Problem p;
  p.lower.resize(n);
  p.upper.resize(n);
  p.slack.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = 0.1 + 2.0 * u01(rng);
    z[i] = -0.5 + 2.0 * u01(rng);
    b[i] = u01(rng) < 0.5 ? 0.0 : u01(rng);
    p.lower[i] = 0.3 * u01(rng);
    p.upper[i] = 1.0;
  }
  for (auto& s : p.slack) s = 0.02 + 0.1 * u01(rng);
  p.derivative = [&](std::size_t i, double x) { return c[i] * (x - z[i]) + 4.0 * b[i] * x * x * x; };
  return p;
}

bool feasible(const chain::Problem& p, const std::vector<double>& x, double tol) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < p.lower[i] - tol || x[i] > p.upper[i] + tol) return false;
  }
  for (std::size_t e = 0; e + 1 < x.size(); ++e) {
    if (std::abs(x[e + 1] - x[e]) > p.slack[e] + tol) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("chain") {

TEST_CASE("exact and projected-gradient solutions agree on random problems") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> c, z, b;
    const std::size_t n = 3 + trial % 17;
    const auto p = random_problem(rng, n, c, z, b);
    const auto exact = chain::solve_exact(p);
    CHECK(feasible(p, exact.x, 1e-13));
    CHECK(exact.kkt_residual < 1e-10);
    const auto pg = chain::solve_projected_gradient(p, std::vector<double>(n, 0.5));
    CHECK(pg.kkt_residual < 1e-8);
    for (std::size_t i = 0; i < n; ++i) CHECK(pg.x[i] == doctest::Approx(exact.x[i]).epsilon(1e-7));
  }
}

TEST_CASE("multipliers are non-negative and complementary") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> c, z, b;
    const auto p = random_problem(rng, 12, c, z, b);
    const auto s = chain::solve_exact(p);
    for (std::size_t e = 0; e + 1 < s.x.size(); ++e) {
      CHECK(s.edge_multiplier[e] >= 0.0);
      if (std::abs(s.x[e + 1] - s.x[e]) < p.slack[e] - 1e-9) CHECK(s.edge_multiplier[e] == 0.0);
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      CHECK(s.upper_multiplier[i] >= 0.0);
      CHECK(s.lower_multiplier[i] >= 0.0);
      if (s.x[i] < p.upper[i] - 1e-9) CHECK(s.upper_multiplier[i] == 0.0);
      if (s.x[i] > p.lower[i] + 1e-9) CHECK(s.lower_multiplier[i] == 0.0);
    }
  }
}

TEST_CASE("projection") {
  chain::Problem p;
  p.lower = {0.0, 0.0, 0.0, 0.0};
  p.upper = {1.0, 1.0, 1.0, 1.0};
  p.slack = {0.1, 0.1, 0.1};
  p.derivative = [](std::size_t, double) { return 0.0; };
  const auto x = chain::project(p, {0.0, 1.0, 0.0, 2.0});
  CHECK(feasible(p, x, 1e-14));
  const auto again = chain::project(p, x);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(again[i] == doctest::Approx(x[i]).epsilon(1e-14));
  // A single peak is shaved into a slope-limited tent.
  const auto tent = chain::project(p, {0.0, 0.0, 1.0, 0.0});
  CHECK(tent[2] - tent[1] == doctest::Approx(0.1));
  CHECK(tent[2] - tent[3] == doctest::Approx(0.1));
}

TEST_CASE("invalid problems") {
  chain::Problem p;
  p.lower = {0.0, 0.5};
  p.upper = {0.1, 1.0};
  p.slack = {0.1};
  p.derivative = [](std::size_t, double x) { return x; };
  CHECK_THROWS_AS(chain::solve_exact(p), std::invalid_argument);
  p.slack = {};
  CHECK_THROWS_AS(chain::solve_exact(p), std::invalid_argument);
  p.slack = {0.5};
  p.derivative = nullptr;
  CHECK_THROWS_AS(chain::solve_projected_gradient(p, {0.0, 0.5}), std::invalid_argument);
}

}  // TEST_SUITE
