#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dengfan/potential.hpp"

namespace dengfan {

/// Uniform grid of interior points on (r_min, r_max); the reduced radial
/// function obeys Dirichlet conditions at both ends.
struct RadialGrid {
  double r_min;
  double r_max;
  int count;  ///< interior points, >= 1000

  double spacing() const { return (r_max - r_min) / (count + 1); }
  double point(int i) const { return r_min + spacing() * (i + 1); }
};

inline RadialGrid default_grid(const MoleculeParams& p) {
  // r_max = r_e + 40/a suppresses the tail below 1e-17; r_min small enough
  // that the centrifugal wall enforces psi -> 0
  return {1e-4, p.r_e + 40.0 / p.a, 40000};
}

struct RadialSolution {
  double eigenvalue;                 ///< eV
  std::vector<double> wavefunction;  ///< count amplitudes, sum psi^2 h = 1
  int node_count;
  RadialGrid grid;
  bool bound;  ///< eigenvalue < 0
};

struct RadialSolveResult {
  std::vector<RadialSolution> states;  ///< ascending eigenvalue
  bool all_bound;  ///< false: fewer bound states than requested on this grid
};

namespace detail {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below x, by the LDL^T Sturm sequence.
inline int sturm_count_below(const std::vector<double>& diag, double off, double x) {
  const double offsq = off * off;
  const double pivmin =
      std::max(1.0, offsq) * (std::numeric_limits<double>::min() /
                              std::numeric_limits<double>::epsilon());
  int count = 0;
  double d = diag[0] - x;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::fabs(d) < pivmin) d = -pivmin;
    d = (diag[i] - x) - offsq / d;
    if (d < 0.0) ++count;
  }
  return count;
}

/// k-th eigenvalue (0-based, ascending) by bisection on the Sturm count.
inline double eigenvalue_bisect(const std::vector<double>& diag, double off, int k) {
  double lo = diag[0];
  for (double d : diag) lo = std::min(lo, d);
  lo -= 2.0 * std::fabs(off) + 1.0;
  // grow the upper bound only as far as the k-th eigenvalue needs
  double hi = lo + 1.0;
  while (sturm_count_below(diag, off, hi) <= k) {
    hi = lo + 2.0 * (hi - lo);
    if (!std::isfinite(hi)) throw solver_error("eigenvalue_bisect: bound search diverged");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at rounding resolution
    if (sturm_count_below(diag, off, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

/// Solve (T - lambda I) x = b for tridiagonal T with constant off-diagonal,
/// by LU with partial pivoting. b is overwritten with x.
inline void shifted_tridiag_solve(const std::vector<double>& diag, double off, double lambda,
                                  std::vector<double>& b) {
  const std::size_t n = diag.size();
  std::vector<double> d(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0), dl(n > 1 ? n - 1 : 0);
  std::vector<char> swapped(n > 1 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) du[i] = off;
  for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = off;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      if (d[i] == 0.0) d[i] = std::numeric_limits<double>::min();
      const double m = dl[i] / d[i];
      dl[i] = m;  // store multiplier
      d[i + 1] -= m * du[i];
      if (i + 2 < n) du2[i] = 0.0;
    } else {
      swapped[i] = 1;
      const double m = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = m;
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - m * tmp;
      du[i] = tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du2[i];
      }
    }
  }
  // forward substitution
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= dl[i] * b[i];
  }
  // back substitution
  if (d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::min();
  b[n - 1] /= d[n - 1];
  if (n >= 2) {
    const std::size_t i = n - 2;
    b[i] = (b[i] - du[i] * b[i + 1]) / d[i];
  }
  for (std::size_t ii = n; ii >= 3; --ii) {
    const std::size_t i = ii - 3;
    b[i] = (b[i] - du[i] * b[i + 1] - (i + 2 < n ? du2[i] * b[i + 2] : 0.0)) / d[i];
  }
}

/// Sign changes among entries above a noise floor; the far tail of an
/// inverse-iteration vector is rounding noise with random signs.
inline int count_sign_changes(const std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::fabs(x));
  const double floor = 1e-8 * peak;
  int changes = 0;
  int last_sign = 0;
  for (double x : v) {
    if (std::fabs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

}  // namespace detail

/// Lowest n_states eigenpairs of -kappa d^2/dr^2 + v_eff(r) on the grid,
/// Dirichlet boundaries, by Sturm-sequence bisection plus inverse iteration.
/// The potential is injectable so box/oscillator self-tests need no special
/// casing. States above zero are returned but flagged unbound.
inline RadialSolveResult solve_radial(const std::function<double(double)>& v_eff, double mu,
                                      const RadialGrid& grid, int n_states) {
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min))
    throw std::domain_error("solve_radial: need 0 < r_min < r_max");
  if (grid.count < 1000) throw std::domain_error("solve_radial: grid.count must be >= 1000");
  if (n_states < 1 || n_states > grid.count)
    throw std::domain_error("solve_radial: bad n_states");

  const double k = kappa(mu);
  const double h = grid.spacing();
  const double off = -k / (h * h);
  std::vector<double> diag(grid.count);
  for (int i = 0; i < grid.count; ++i) {
    const double v = v_eff(grid.point(i));
    if (!std::isfinite(v))
      throw std::domain_error("solve_radial: potential not finite at r=" +
                              std::to_string(grid.point(i)));
    diag[i] = 2.0 * k / (h * h) + v;
  }

  RadialSolveResult result;
  result.states.reserve(n_states);
  for (int state = 0; state < n_states; ++state) {
    const double lambda = detail::eigenvalue_bisect(diag, off, state);
    // shift for the solves is nudged off exact singularity; far below the
    // eigenvalue gaps, so the vector is unaffected
    const double shift = lambda + std::max(std::fabs(lambda), 1.0) * 1e-14;

    // inverse iteration from a deterministic pseudo-random start
    std::vector<double> v(grid.count);
    std::uint64_t seed = 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(state);
    for (auto& x : v) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      x = static_cast<double>(seed >> 11) / 9007199254740992.0 - 0.5;
    }
    bool converged = false;
    std::vector<double> prev;
    for (int iter = 0; iter < 8; ++iter) {
      detail::shifted_tridiag_solve(diag, off, shift, v);
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (!(norm > 0.0) || !std::isfinite(norm))
        throw solver_error("solve_radial: inverse iteration broke down");
      for (auto& x : v) x /= norm;
      if (!prev.empty()) {
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * prev[i];
        if (1.0 - std::fabs(dot) < 1e-12) {
          converged = true;
          if (dot < 0.0)
            for (auto& x : v) x = -x;
          break;
        }
      }
      prev = v;
    }
    if (!converged)
      throw solver_error("solve_radial: inverse iteration did not converge for state " +
                         std::to_string(state));

    // normalize to sum psi^2 h = 1 and fix the sign of the first lobe
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    const double scale = 1.0 / std::sqrt(norm2 * h);
    for (auto& x : v) x *= scale;
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::fabs(x));
    for (double x : v) {
      if (std::fabs(x) > 1e-3 * peak) {
        if (x < 0.0)
          for (auto& y : v) y = -y;
        break;
      }
    }

    RadialSolution sol;
    sol.eigenvalue = lambda;
    sol.node_count = detail::count_sign_changes(v);
    sol.wavefunction = std::move(v);
    sol.grid = grid;
    sol.bound = lambda < 0.0;
    result.states.push_back(std::move(sol));
  }
  result.all_bound = std::all_of(result.states.begin(), result.states.end(),
                                 [](const RadialSolution& s) { return s.bound; });
  return result;
}

/// Molecule front end: both centrifugal modes of the effective potential.
inline RadialSolveResult solve_radial(const MoleculeParams& p, int l, CentrifugalMode mode,
                                      const RadialGrid& grid, int n_states) {
  const DengFanShape sh = shape(p);
  const double mu = p.mu;
  return solve_radial(
      [sh, l, mu, mode](double r) { return effective_potential(sh, l, mu, r, mode); }, mu, grid,
      n_states);
}

/// sum f(r_i) psi_i^2 h over the grid, consistent with the solver's
/// normalization. Throws if the observable is not finite on the grid.
inline double numeric_expectation(const RadialSolution& sol,
                                  const std::function<double(double)>& f) {
  const double h = sol.grid.spacing();
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(sol.wavefunction.size()); ++i) {
    const double term = f(sol.grid.point(i)) * sol.wavefunction[i] * sol.wavefunction[i];
    if (!std::isfinite(term))
      throw std::domain_error("numeric_expectation: observable not finite at r=" +
                              std::to_string(sol.grid.point(i)));
    sum += term;
  }
  return sum * h;
}

}  // namespace dengfan
