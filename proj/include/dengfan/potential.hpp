#pragma once

#include <algorithm>
#include <cmath>

#include "dengfan/constants.hpp"
#include "dengfan/errors.hpp"
#include "dengfan/molecule.hpp"

namespace dengfan {

/// Series constant of the exponential 1/r^2 replacement.
inline constexpr double centrifugal_c0 = 1.0 / 12.0;

/// V(r) = D (1 - b/(e^{ar}-1))^2 - D with b = e^{a r_e} - 1.
/// b is recomputed from (a, r_e), never stored independently.
struct DengFanShape {
  double D;    ///< well depth, eV
  double r_e;  ///< minimum position, Angstrom
  double a;    ///< range, 1/Angstrom
  double b;    ///< e^{a r_e} - 1, dimensionless
};

namespace detail {

/// e^{ar} - 1; series path below r = 1e-6 Angstrom so oracle grids that
/// start near the origin do not lose digits to cancellation.
inline double exp_ar_minus_one(double a, double r) {
  return r < 1e-6 ? std::expm1(a * r) : std::exp(a * r) - 1.0;
}

}  // namespace detail

inline DengFanShape shape(const MoleculeParams& p) {
  const double e = std::exp(p.a * p.r_e);
  if (!std::isfinite(e))
    throw std::domain_error("shape: exp(a*r_e) overflows for molecule " + p.name);
  return {p.D, p.r_e, p.a, e - 1.0};
}

inline double potential_energy(const DengFanShape& s, double r) {
  if (!(r > 0.0)) throw std::domain_error("potential_energy: r must be > 0");
  const double t = 1.0 - s.b / detail::exp_ar_minus_one(s.a, r);
  return s.D * t * t - s.D;
}

/// a^2 [C0 + e^{ar}/(e^{ar}-1)^2]: the exponential stand-in for 1/r^2.
/// Exact in the r -> 0 leading order; degrades with growing a*r.
inline double pekeris_inverse_r2(double a, double r) {
  const double em1 = detail::exp_ar_minus_one(a, r);
  return a * a * (centrifugal_c0 + (em1 + 1.0) / (em1 * em1));
}

enum class CentrifugalMode { exact, approx };

/// V(r) plus the centrifugal term, either with the true 1/r^2 (exact) or
/// with the exponential replacement (approx). Identical functions at l = 0.
inline double effective_potential(const DengFanShape& s, int l, double mu, double r,
                                  CentrifugalMode mode) {
  if (l < 0) throw std::domain_error("effective_potential: l must be >= 0");
  const double v = potential_energy(s, r);
  if (l == 0) return v;
  const double cf =
      mode == CentrifugalMode::exact ? 1.0 / (r * r) : pekeris_inverse_r2(s.a, r);
  return v + kappa(mu) * static_cast<double>(l) * (l + 1.0) * cf;
}

/// Quadratic coefficients of the effective potential in the substitution
/// variable xi = 1/(e^{ar} - 1): V_eff(xi) = P + Q xi + R xi^2.
struct EffectiveCoefficients {
  double P;  ///< eV; kappa a^2 l(l+1) C0
  double Q;  ///< eV; kappa a^2 l(l+1) - 2 b D
  double R;  ///< eV; kappa a^2 l(l+1) + D b^2
  double eval(double xi) const { return P + xi * (Q + R * xi); }
};

inline EffectiveCoefficients pqr(const DengFanShape& s, int l, double mu) {
  if (l < 0) throw std::domain_error("pqr: l must be >= 0");
  const double ka2 = kappa(mu) * s.a * s.a;
  const double ll1 = static_cast<double>(l) * (l + 1.0);
  return {ka2 * ll1 * centrifugal_c0, ka2 * ll1 - 2.0 * s.b * s.D,
          ka2 * ll1 + s.D * s.b * s.b};
}

// xi-space view of the radial coordinate
inline double xi_of_r(double a, double r) { return 1.0 / detail::exp_ar_minus_one(a, r); }
inline double r_of_xi(double a, double xi) { return std::log1p(1.0 / xi) / a; }

/// Roots of V_eff(xi) = E, ordered. xi_lower + xi_upper = -Q/R and
/// xi_lower * xi_upper = (P - E)/R hold to rounding.
struct TurningPoints {
  double xi_lower;
  double xi_upper;
};

inline TurningPoints turning_points(const EffectiveCoefficients& c, double E) {
  const double disc = c.Q * c.Q - 4.0 * c.R * (c.P - E);
  if (!(disc > 0.0))
    throw no_classical_region_error(
        "turning_points: energy does not cross the effective potential");
  const double q = -0.5 * (c.Q + std::copysign(std::sqrt(disc), c.Q));
  const double x1 = q / c.R;
  const double x2 = (c.P - E) / q;
  return {std::min(x1, x2), std::max(x1, x2)};
}

}  // namespace dengfan
