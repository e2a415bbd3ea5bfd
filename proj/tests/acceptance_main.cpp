// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances are pinned in code; fixture directory comes from
// DFSPEC_FIXTURES or the build-time default.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dengfan/dengfan.hpp"

using namespace dengfan;
namespace fs = std::filesystem;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  bool pass = true;
  std::ostringstream detail;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "\n    FAILED: " << what;
    }
  }

  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  void finish(double budget_s = 0.0) {
    const double t = seconds();
    if (budget_s > 0.0 && t > budget_s) {
      pass = false;
      detail << "\n    FAILED: runtime " << t << " s exceeds budget " << budget_s << " s";
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "  [" << format_sig10(t) << " s]"
              << detail.str() << "\n";
    if (!pass) ++failures;
  }
};

fs::path fixture_dir() {
  if (const char* env = std::getenv("DFSPEC_FIXTURES")) return env;
  return DFSPEC_DEFAULT_FIXTURES;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

void criterion_1_energy_reproduction() {
  Criterion c("criterion 1: energy reproduction over all 336 reference cells (<=1e-6 eV)");
  std::size_t cells = 0;
  double worst = 0.0;
  for (const auto& m : builtin_registry()) {
    for (const auto& row : load_fixture(fixture_dir(), m.name)) {
      ++cells;
      const double dev = std::fabs(energy(m, {row.n, row.l}) - row.E);
      worst = std::max(worst, dev);
      c.require(dev <= 1e-6, m.name + "(n=" + std::to_string(row.n) + ",l=" +
                                 std::to_string(row.l) + ") |dE|=" + format_sig10(dev));
    }
  }
  c.require(cells == 336, "expected 336 cells, saw " + std::to_string(cells));
  // spot anchors
  c.require(std::fabs(energy(*find_builtin("ScH"), {0, 0}) - (-2.145149306)) <= 1e-6,
            "ScH(0,0) anchor");
  c.require(std::fabs(energy(*find_builtin("CO"), {1, 5}) - (-10.78600845)) <= 1e-6,
            "CO(1,5) anchor");
  c.require(std::fabs(energy(*find_builtin("I2"), {3, 0}) - (-1.462957037)) <= 1e-6,
            "I2(3,0) anchor");
  c.detail << "\n    max |dE| = " << format_sig10(worst) << " eV over " << cells << " cells";
  c.finish(1.0);
}

void criterion_2_expectation_reproduction() {
  Criterion c(
      "criterion 2: expectation reproduction (r2 1e-6 rel, V/T 1e-6 eV, p2 2e-3 rel)");
  double worst_r2 = 0.0, worst_v = 0.0, worst_t = 0.0, worst_p2 = 0.0;
  std::size_t cells = 0;
  for (const auto& m : builtin_registry()) {
    for (const auto& row : load_fixture(fixture_dir(), m.name)) {
      ++cells;
      const QuantumState st{row.n, row.l};
      const double dr2 = rel(expect_r2(m, st), row.r2);
      const double dv = std::fabs(expect_V(m, st) - row.V);
      const double dt = std::fabs(expect_T(m, st) - row.T);
      const double dp2 = rel(expect_p2(m, st).paper_scale, row.p2_paper);
      worst_r2 = std::max(worst_r2, dr2);
      worst_v = std::max(worst_v, dv);
      worst_t = std::max(worst_t, dt);
      worst_p2 = std::max(worst_p2, dp2);
      const std::string cell =
          m.name + "(n=" + std::to_string(row.n) + ",l=" + std::to_string(row.l) + ")";
      c.require(dr2 <= 1e-6, cell + " r2");
      c.require(dv <= 1e-6, cell + " V");
      c.require(dt <= 1e-6, cell + " T");
      c.require(dp2 <= 2e-3, cell + " p2");
    }
  }
  c.require(cells == 336, "expected 336 cells");
  c.detail << "\n    max dev: r2 " << format_sig10(worst_r2) << " rel, V "
           << format_sig10(worst_v) << " eV, T " << format_sig10(worst_t) << " eV, p2 "
           << format_sig10(worst_p2) << " rel";
  c.finish(1.0);
}

void criterion_3_identity_suite() {
  Criterion c("criterion 3: T+V=E (1e-10 rel) and p2=2 mu c^2 T (1e-12 rel), full window");
  std::size_t states = 0;
  for (const auto& m : builtin_registry()) {
    const double mu_c2 = amu_to_evc2(m.mu);
    for (int l = 0; l <= 10; ++l) {
      const int nm = n_max(m, static_cast<double>(l));
      for (int n = 0; n <= nm; ++n) {
        ++states;
        const QuantumState st{n, l};
        const double E = energy(m, st);
        const double T = expect_T(m, st);
        const double V = expect_V(m, st);
        const std::string cell =
            m.name + "(n=" + std::to_string(n) + ",l=" + std::to_string(l) + ")";
        c.require(rel(T + V, E) <= 1e-10, cell + " T+V=E");
        c.require(rel(expect_p2(m, st).natural, 2.0 * mu_c2 * T) <= 1e-12,
                  cell + " p2 identity");
      }
    }
  }
  c.detail << "\n    " << states << " bound states across 14 molecules, l <= 10";
  c.finish();
}

void criterion_4_hft_oracle() {
  Criterion c("criterion 4: parameter-derivative identities <=1e-6 at converged step; "
              "slope 2 +- 0.2");
  double worst = 0.0;
  for (const auto& m : builtin_registry()) {
    for (int l = 0; l <= 5; ++l)
      for (int n = 0; n <= 3; ++n) {
        const HftResiduals r = hft_fd_check(m, {n, l});
        const double w = std::max({r.res_V, r.res_T, r.res_r2});
        worst = std::max(worst, w);
        c.require(w <= 1e-6, m.name + "(n=" + std::to_string(n) + ",l=" + std::to_string(l) +
                                 ") residual " + format_sig10(w));
      }
  }
  c.detail << "\n    max residual " << format_sig10(worst);

  // Richardson slope: central-difference residual halves as h^2. D and mu
  // at (0,0) over three halvings; l at (0,5) over the two halvings that
  // stay truncation-dominated for every molecule in 64-bit arithmetic.
  auto mean_slope = [](const std::vector<double>& res) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < res.size(); ++i) s += std::log2(res[i] / res[i + 1]);
    return s / static_cast<double>(res.size() - 1);
  };
  for (const auto& m : builtin_registry()) {
    const double k = kappa(m.mu);
    const double V = expect_V(m, {0, 0});
    const double T = expect_T(m, {0, 0});
    const double r2 = expect_r2(m, {0, 5});

    std::vector<double> res_d, res_mu, res_l;
    for (int i = 0; i < 4; ++i) {
      const double hd = 2e-2 * m.D / (1 << i);
      const std::function<double(double)> fD = [&](double x) {
        MoleculeParams q = m;
        q.D = x;
        return energy(q, 0, 0.0);
      };
      res_d.push_back(rel(m.D * central_difference(fD, m.D, hd), V));
      const double hm = 2e-2 * m.mu / (1 << i);
      const std::function<double(double)> fmu = [&](double x) {
        MoleculeParams q = m;
        q.mu = x;
        return energy(q, 0, 0.0);
      };
      res_mu.push_back(rel(-m.mu * central_difference(fmu, m.mu, hm), T));
    }
    for (int i = 0; i < 3; ++i) {
      const double hl = 2.0 / (1 << i);
      const std::function<double(double)> fl = [&](double x) { return energy(m, 0, x); };
      res_l.push_back(rel(central_difference(fl, 5.0, hl) / (k * 11.0), r2));
    }
    const double sd = mean_slope(res_d);
    const double sm = mean_slope(res_mu);
    const double sl = mean_slope(res_l);
    c.require(std::fabs(sd - 2.0) <= 0.2, m.name + " D-slope " + format_sig10(sd));
    c.require(std::fabs(sm - 2.0) <= 0.2, m.name + " mu-slope " + format_sig10(sm));
    c.require(std::fabs(sl - 2.0) <= 0.2, m.name + " l-slope " + format_sig10(sl));
  }
  c.finish();
}

void criterion_5_quantization_rule() {
  Criterion c("criterion 5: |action(E_n)-action(E_0)-n pi| <= 1e-6; quad-vs-analytic 1e-8");
  double worst_rule = 0.0, worst_quad = 0.0;
  for (const char* name : {"ScH", "CO", "H2", "I2"}) {
    const MoleculeParams& m = *find_builtin(name);
    for (int l : {0, 2, 5}) {
      for (int n = 0; n <= 3; ++n) {
        const double residual = proper_rule_residual(m, n, l);
        worst_rule = std::max(worst_rule, residual);
        c.require(residual <= 1e-6, std::string(name) + "(n=" + std::to_string(n) +
                                        ",l=" + std::to_string(l) + ") rule residual " +
                                        format_sig10(residual));
        const double E = energy(m, {n, l});
        const double dq = std::fabs(action_integral_numeric(m, l, E).value -
                                    action_integral_analytic(m, l, E));
        worst_quad = std::max(worst_quad, dq);
        c.require(dq <= 1e-8, std::string(name) + " quad-vs-analytic " + format_sig10(dq));
      }
    }
  }
  c.detail << "\n    max rule residual " << format_sig10(worst_rule)
           << ", max quad-vs-analytic " << format_sig10(worst_quad);
  c.finish(10.0);
}

void criterion_6_riccati() {
  Criterion c("criterion 6: ground-state nonlinear residual <= 1e-8 on a 100-point grid");
  double worst = 0.0;
  for (const auto& m : builtin_registry()) {
    for (int l : {0, 1, 2}) {
      const RiccatiGround rg = riccati_ground(m, l);
      const EffectiveCoefficients coeff = pqr(shape(m), l, m.mu);
      const double k = kappa(m.mu);
      const double E0 = energy(m, {0, l});
      const TurningPoints tp = turning_points(coeff, E0);
      for (int i = 0; i < 100; ++i) {
        const double xi = tp.xi_lower + (tp.xi_upper - tp.xi_lower) * i / 99.0;
        const double phi = rg.A + rg.B * xi;
        const double lhs = -m.a * xi * (1.0 + xi) * rg.B;
        const double rhs = -(E0 - coeff.eval(xi)) / k - phi * phi;
        const double scale =
            std::max({std::fabs(lhs), std::fabs(phi * phi), std::fabs((E0 - coeff.P) / k)});
        const double r = std::fabs(lhs - rhs) / scale;
        worst = std::max(worst, r);
        c.require(r <= 1e-8,
                  m.name + " l=" + std::to_string(l) + " residual " + format_sig10(r));
      }
    }
  }
  c.detail << "\n    max residual " << format_sig10(worst);
  c.finish();
}

void criterion_7_oracle() {
  Criterion c("criterion 7: finite-difference eigensolver cross-checks (<=1e-3 eV) and "
              "box O(h^2)");
  // exact centrifugal term at l = 0, where the closed form is approximation-free
  for (const char* name : {"H2", "HCl", "ScH", "I2"}) {
    const MoleculeParams& m = *find_builtin(name);
    const auto res = solve_radial(m, 0, CentrifugalMode::exact, default_grid(m), 4);
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n) {
      const double dev = std::fabs(res.states[n].eigenvalue - energy(m, {n, 0}));
      worst = std::max(worst, dev);
      c.require(dev <= 1e-3, std::string(name) + " exact-mode n=" + std::to_string(n) +
                                 " |dE|=" + format_sig10(dev));
      c.require(res.states[n].node_count == n,
                std::string(name) + " node count at n=" + std::to_string(n));
    }
    c.detail << "\n    " << name << " exact-mode max |dE| = " << format_sig10(worst);
  }
  // approx centrifugal term matches the closed form at every l
  {
    const MoleculeParams& m = *find_builtin("ScH");
    double worst = 0.0;
    for (int l = 0; l <= 5; ++l) {
      const auto res = solve_radial(m, l, CentrifugalMode::approx, default_grid(m), 4);
      for (int n = 0; n <= 3; ++n) {
        const double dev = std::fabs(res.states[n].eigenvalue - energy(m, {n, l}));
        worst = std::max(worst, dev);
        c.require(dev <= 1e-3, "ScH approx-mode n=" + std::to_string(n) + " l=" +
                                   std::to_string(l) + " |dE|=" + format_sig10(dev));
      }
    }
    c.detail << "\n    ScH approx-mode max |dE| = " << format_sig10(worst);
  }
  // box spectrum with O(h^2) convergence
  {
    const double k = kappa(1.0);
    const double L = 10.0;
    double prev_err = 0.0;
    for (int count : {1000, 2000, 4000}) {
      const auto res = solve_radial([](double) { return 0.0; }, 1.0,
                                    RadialGrid{1.0, 1.0 + L, count}, 3);
      double err = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double kn = (i + 1) * std::numbers::pi / L;
        err = std::max(err, std::fabs(res.states[i].eigenvalue - k * kn * kn));
      }
      if (prev_err > 0.0) {
        const double slope = std::log2(prev_err / err);
        c.require(std::fabs(slope - 2.0) <= 0.2,
                  "box convergence slope " + format_sig10(slope));
      }
      prev_err = err;
    }
    c.detail << "\n    box finest-grid error " << format_sig10(prev_err) << " eV";
  }
  c.finish(120.0);
}

void criterion_8_monotonicity() {
  Criterion c("criterion 8: E, V, T, p2 strictly increase and r2 strictly decreases in n "
              "and l");
  for (const auto& m : builtin_registry()) {
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 5; ++l) {
        const QuantumState st{n, l};
        const std::string cell =
            m.name + "(n=" + std::to_string(n) + ",l=" + std::to_string(l) + ")";
        if (n < 3) {
          const QuantumState up{n + 1, l};
          c.require(energy(m, up) > energy(m, st), cell + " E in n");
          c.require(expect_V(m, up) > expect_V(m, st), cell + " V in n");
          c.require(expect_T(m, up) > expect_T(m, st), cell + " T in n");
          c.require(expect_p2(m, up).paper_scale > expect_p2(m, st).paper_scale,
                    cell + " p2 in n");
          c.require(expect_r2(m, up) < expect_r2(m, st), cell + " r2 in n");
        }
        if (l < 5) {
          const QuantumState up{n, l + 1};
          c.require(energy(m, up) > energy(m, st), cell + " E in l");
          c.require(expect_V(m, up) > expect_V(m, st), cell + " V in l");
          c.require(expect_T(m, up) > expect_T(m, st), cell + " T in l");
          c.require(expect_p2(m, up).paper_scale > expect_p2(m, st).paper_scale,
                    cell + " p2 in l");
          c.require(expect_r2(m, up) < expect_r2(m, st), cell + " r2 in l");
        }
      }
  }
  c.finish();
}

}  // namespace

int main() {
  try {
    criterion_1_energy_reproduction();
    criterion_2_expectation_reproduction();
    criterion_3_identity_suite();
    criterion_4_hft_oracle();
    criterion_5_quantization_rule();
    criterion_6_riccati();
    criterion_7_oracle();
    criterion_8_monotonicity();
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance suite aborted: " << e.what() << "\n";
    return 1;
  }
  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " criterion(s) failed\n";
  return 1;
}
