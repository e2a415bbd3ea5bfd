#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dengfan/radial_solver.hpp"
#include "dengfan/spectrum.hpp"

using namespace dengfan;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const MoleculeParams& mol(const char* name) {
  const MoleculeParams* p = find_builtin(name);
  REQUIRE(p != nullptr);
  return *p;
}

double box_level(double k, double length, int n_prime) {
  const double kn = n_prime * std::numbers::pi / length;
  return k * kn * kn;
}
}  // namespace

TEST_CASE("particle in a box", "[oracle]") {
  const double mu = 1.0;
  const double k = kappa(mu);
  const double L = 10.0;

  SECTION("levels and nodes") {
    const RadialGrid grid{1.0, 1.0 + L, 4000};
    const auto res = solve_radial([](double) { return 0.0; }, mu, grid, 3);
    REQUIRE(res.states.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK_THAT(res.states[i].eigenvalue, WithinRel(box_level(k, L, i + 1), 1e-5));
      CHECK(res.states[i].node_count == i);
      CHECK_FALSE(res.states[i].bound);  // all positive: box artifact states
    }
    CHECK_FALSE(res.all_bound);
  }
  SECTION("O(h^2) convergence") {
    double prev_err = 0.0;
    for (int count : {1000, 2000, 4000}) {
      const RadialGrid grid{1.0, 1.0 + L, count};
      const auto res = solve_radial([](double) { return 0.0; }, mu, grid, 1);
      const double err = std::fabs(res.states[0].eigenvalue - box_level(k, L, 1));
      if (prev_err > 0.0) {
        const double slope = std::log2(prev_err / err);
        CHECK_THAT(slope, WithinAbs(2.0, 0.2));
      }
      prev_err = err;
    }
  }
}

TEST_CASE("harmonic well with injected potential", "[oracle]") {
  // V = c (r - r0)^2 has levels (2n+1) sqrt(c kappa)
  const double mu = 1.0;
  const double c = 5.0;
  const double r0 = 6.0;
  const double k = kappa(mu);
  const RadialGrid grid{1.0, 11.0, 4000};
  const auto res = solve_radial([&](double r) { return c * (r - r0) * (r - r0); }, mu, grid, 3);
  for (int n = 0; n < 3; ++n)
    CHECK_THAT(res.states[n].eigenvalue,
               WithinRel((2.0 * n + 1.0) * std::sqrt(c * k), 5e-4));
}

TEST_CASE("ScH l=0 against the closed form", "[oracle]") {
  const MoleculeParams& p = mol("ScH");
  RadialGrid grid = default_grid(p);
  grid.count = 20000;  // h^2 error ~1e-5 eV here, well under tolerance
  const auto res = solve_radial(p, 0, CentrifugalMode::exact, grid, 4);
  REQUIRE(res.states.size() == 4);
  CHECK(res.all_bound);

  SECTION("lowest eigenvalue cross-checks the closed form") {
    CHECK_THAT(res.states[0].eigenvalue, WithinAbs(-2.145149, 1e-3));
    for (int n = 0; n < 4; ++n)
      CHECK_THAT(res.states[n].eigenvalue, WithinAbs(energy(p, {n, 0}), 1e-3));
  }
  SECTION("ascending eigenvalues, node counts, normalization") {
    const double h = grid.spacing();
    for (int n = 0; n < 4; ++n) {
      const auto& st = res.states[n];
      CHECK(st.bound);
      CHECK(st.node_count == n);
      if (n > 0) CHECK(st.eigenvalue > res.states[n - 1].eigenvalue);
      double norm = 0.0;
      for (double x : st.wavefunction) norm += x * x;
      CHECK_THAT(norm * h, WithinAbs(1.0, 1e-10));
    }
  }
  SECTION("rayleigh-quotient identity") {
    // E <psi|psi> = kappa sum (dpsi/h)^2 h + sum V psi^2 h, exact for the
    // discrete operator up to rounding
    const auto& st = res.states[0];
    const double h = grid.spacing();
    const double k = kappa(p.mu);
    const DengFanShape s = shape(p);
    double t_num = 0.0;
    double prev = 0.0;  // Dirichlet
    for (std::size_t i = 0; i <= st.wavefunction.size(); ++i) {
      const double cur = i < st.wavefunction.size() ? st.wavefunction[i] : 0.0;
      t_num += (cur - prev) * (cur - prev);
      prev = cur;
    }
    t_num *= k / h;
    const double v_num = numeric_expectation(st, [&](double r) { return potential_energy(s, r); });
    CHECK_THAT(t_num + v_num, WithinRel(st.eigenvalue, 1e-9));
  }
  SECTION("numeric expectation values against the reference cells") {
    const auto& st = res.states[0];
    const DengFanShape s = shape(p);
    CHECK_THAT(numeric_expectation(st, [](double) { return 1.0; }), WithinAbs(1.0, 1e-10));
    CHECK_THAT(numeric_expectation(st, [&](double r) { return potential_energy(s, r); }),
               WithinAbs(-2.196945170, 5e-3));
    // the closed-form <r^-2> is the expectation of the exponential
    // replacement operator; over the numeric wavefunction they agree
    CHECK_THAT(numeric_expectation(st, [&](double r) { return pekeris_inverse_r2(s.a, r); }),
               WithinAbs(0.3536004243, 1e-5));
    // the literal 1/r^2 moment differs by the replacement error
    CHECK_THAT(numeric_expectation(st, [](double r) { return 1.0 / (r * r); }),
               WithinAbs(0.3111588899, 5e-3));
  }
}

TEST_CASE("centrifugal modes at l > 0", "[oracle]") {
  const MoleculeParams& p = mol("ScH");
  RadialGrid grid = default_grid(p);
  grid.count = 20000;

  SECTION("approx mode lands on the closed form") {
    const auto res = solve_radial(p, 2, CentrifugalMode::approx, grid, 1);
    CHECK_THAT(res.states[0].eigenvalue, WithinAbs(energy(p, {0, 2}), 1e-3));
  }
  SECTION("exact mode reports the replacement error") {
    const auto res = solve_radial(p, 2, CentrifugalMode::exact, grid, 1);
    const double delta = res.states[0].eigenvalue - energy(p, {0, 2});
    // the replacement error is real but small; reported, not bounded
    CHECK(std::fabs(delta) > 1e-5);
    CHECK(std::fabs(delta) < 1e-2);
  }
  SECTION("l = 0: both modes produce identical eigenvalues") {
    const auto a = solve_radial(p, 0, CentrifugalMode::exact, grid, 2);
    const auto b = solve_radial(p, 0, CentrifugalMode::approx, grid, 2);
    for (int n = 0; n < 2; ++n)
      CHECK(a.states[n].eigenvalue == b.states[n].eigenvalue);
  }
}

TEST_CASE("partial results are flagged", "[oracle]") {
  // this well holds exactly one state (n_max = 0)
  const MoleculeParams shallow{"synthetic", 0.04, 1.0, 2.0, 0.2};
  REQUIRE(n_max(shallow, 0.0) == 0);
  const RadialGrid grid{1e-4, 25.0, 4000};
  const auto res = solve_radial(shallow, 0, CentrifugalMode::exact, grid, 6);
  REQUIRE(res.states.size() == 6);
  CHECK_FALSE(res.all_bound);
  CHECK(res.states.front().bound);
  CHECK_FALSE(res.states.back().bound);
}

TEST_CASE("solver input validation", "[oracle]") {
  const auto zero = [](double) { return 0.0; };
  CHECK_THROWS_AS(solve_radial(zero, 1.0, {0.0, 10.0, 4000}, 1), std::domain_error);
  CHECK_THROWS_AS(solve_radial(zero, 1.0, {1.0, 0.5, 4000}, 1), std::domain_error);
  CHECK_THROWS_AS(solve_radial(zero, 1.0, {1.0, 10.0, 999}, 1), std::domain_error);
  CHECK_THROWS_AS(solve_radial(zero, 1.0, {1.0, 10.0, 4000}, 0), std::domain_error);
  CHECK_THROWS_AS(
      solve_radial([](double) { return std::numeric_limits<double>::infinity(); }, 1.0,
                   {1.0, 10.0, 4000}, 1),
      std::domain_error);
}

TEST_CASE("singular observable is rejected", "[oracle]") {
  const RadialGrid grid{1.0, 11.0, 1000};
  const auto res = solve_radial([](double) { return 0.0; }, 1.0, grid, 1);
  const double r0 = grid.point(0);
  CHECK_THROWS_AS(numeric_expectation(res.states[0], [&](double r) { return 1.0 / (r - r0); }),
                  std::domain_error);
}
