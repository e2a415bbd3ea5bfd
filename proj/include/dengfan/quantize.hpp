#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dengfan/expectation.hpp"
#include "dengfan/potential.hpp"
#include "dengfan/spectrum.hpp"

namespace dengfan {

/// Nodes and weights on [-1, 1]. Computed per call: no shared state, safe
/// under concurrent evaluation.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev-angle estimate of the root
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      const double dz = -p1 / pp;
      z += dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = rule.weights[order - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

/// Local wave number in the substitution variable:
/// k(xi) = sqrt((E - P - Q xi - R xi^2) / kappa), 1/Angstrom.
/// Domain is the closed classical region; vanishes at the turning points.
inline double momentum_xi(const EffectiveCoefficients& c, double mu, double E, double xi) {
  const double radicand = (E - c.eval(xi)) / kappa(mu);
  if (radicand < 0.0) {
    // tolerate rounding right at a turning point
    const double scale = (std::fabs(E) + std::fabs(c.P) + std::fabs(c.Q) + std::fabs(c.R)) /
                         kappa(mu);
    if (radicand > -1e-12 * scale) return 0.0;
    throw std::domain_error("momentum_xi: xi is outside the classical region");
  }
  return std::sqrt(radicand);
}

/// Closed form of int_{xi_a}^{xi_b} sqrt((xi - xi_a)(xi_b - xi)) / (xi (1+xi)) dxi
/// = pi [ sqrt((xi_a+1)(xi_b+1)) - 1 - sqrt(xi_a xi_b) ], for 0 <= xi_a <= xi_b.
inline double master_integral(double xi_a, double xi_b) {
  return std::numbers::pi *
         (std::sqrt((xi_a + 1.0) * (xi_b + 1.0)) - 1.0 - std::sqrt(xi_a * xi_b));
}

/// Action between turning points plus the energy it was evaluated at and a
/// quadrature error estimate (difference of the last two orders).
struct ActionIntegral {
  double value;           ///< dimensionless (radians)
  double energy;          ///< eV
  double error_estimate;  ///< dimensionless
};

namespace detail {

/// Fixed-order evaluation after xi = mid + w sin(theta), which absorbs the
/// square-root turning-point singularities into a smooth cos^2 weight.
inline double action_fixed_order(const EffectiveCoefficients& c, double mu,
                                 const TurningPoints& tp, double a, int order) {
  const double mid = 0.5 * (tp.xi_lower + tp.xi_upper);
  const double w = 0.5 * (tp.xi_upper - tp.xi_lower);
  const double pref = std::sqrt(c.R / kappa(mu)) / a * w * w;
  const GaussLegendreRule rule = gauss_legendre(order);
  const double half_pi = 0.5 * std::numbers::pi;
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double theta = half_pi * rule.nodes[i];
    const double xi = mid + w * std::sin(theta);
    const double cth = std::cos(theta);
    sum += rule.weights[i] * cth * cth / (xi * (1.0 + xi));
  }
  return pref * half_pi * sum;
}

}  // namespace detail

/// Quadrature of the momentum over the classical region at energy E, with
/// fixed order; exposed for convergence studies.
inline double action_integral_fixed_order(const MoleculeParams& p, int l, double E, int order) {
  const EffectiveCoefficients c = pqr(shape(p), l, p.mu);
  return detail::action_fixed_order(c, p.mu, turning_points(c, E), p.a, order);
}

/// Adaptive order doubling until successive values agree to tol.
inline ActionIntegral action_integral_numeric(const MoleculeParams& p, int l, double E,
                                              double tol = 1e-9) {
  const EffectiveCoefficients c = pqr(shape(p), l, p.mu);
  const TurningPoints tp = turning_points(c, E);
  double prev = detail::action_fixed_order(c, p.mu, tp, p.a, 16);
  for (int order = 32; order <= 8192; order *= 2) {
    const double cur = detail::action_fixed_order(c, p.mu, tp, p.a, order);
    const double err = std::fabs(cur - prev);
    if (err <= tol) return {cur, E, err};
    prev = cur;
  }
  throw solver_error("action_integral_numeric: quadrature did not converge");
}

/// Closed form of the same action, (1/a) sqrt(R/kappa) * master integral.
inline double action_integral_analytic(const MoleculeParams& p, int l, double E) {
  const EffectiveCoefficients c = pqr(shape(p), l, p.mu);
  const TurningPoints tp = turning_points(c, E);
  return std::sqrt(c.R / kappa(p.mu)) / p.a * master_integral(tp.xi_lower, tp.xi_upper);
}

/// Logarithmic-derivative ansatz phi0(xi) = A + B xi of the ground state.
/// B is the positive branch; A carries the bound-tail sign (negative), with
/// A^2 = (P - E0)/kappa. The coefficient matching of the Riccati equation
/// only closes with this sign.
struct RiccatiGround {
  double A;  ///< 1/Angstrom, < 0
  double B;  ///< 1/Angstrom, > a
};

inline RiccatiGround riccati_ground(const MoleculeParams& p, int l) {
  if (n_max(p, static_cast<double>(l)) < 0)
    throw unbound_state_error("riccati_ground: no bound state for " + p.name +
                                  " at l=" + std::to_string(l),
                              -1);
  const EffectiveCoefficients c = pqr(shape(p), l, p.mu);
  const double k = kappa(p.mu);
  const double B = 0.5 * p.a + std::sqrt(0.25 * p.a * p.a + c.R / k);
  const double A = 0.5 * p.a + c.Q / (2.0 * k * B);
  return {A, B};
}

/// Ground-state action in closed form, (pi/a)(B - sqrt(R/kappa)); equals
/// action_integral_analytic at E0.
inline double ground_action_closed(const MoleculeParams& p, int l) {
  const EffectiveCoefficients c = pqr(shape(p), l, p.mu);
  const RiccatiGround rg = riccati_ground(p, l);
  return std::numbers::pi / p.a * (rg.B - std::sqrt(c.R / kappa(p.mu)));
}

/// |action(E_n) - action(E_0) - n pi|, both actions by quadrature. The
/// closed-form levels satisfy this to quadrature accuracy; it is the central
/// self-consistency check of the quantization rule.
inline double proper_rule_residual(const MoleculeParams& p, int n, int l) {
  const double E_n = energy(p, {n, l});
  const double E_0 = energy(p, {0, l});
  const ActionIntegral a_n = action_integral_numeric(p, l, E_n);
  const ActionIntegral a_0 = action_integral_numeric(p, l, E_0);
  return std::fabs(a_n.value - a_0.value - n * std::numbers::pi);
}

}  // namespace dengfan
