#pragma once

#include <cmath>
#include <string>

#include "dengfan/potential.hpp"

namespace dengfan {

/// One ro-vibrational state: n radial nodes, rotational quantum number l.
struct QuantumState {
  int n;
  int l;
};

/// Dimensionless intermediates shared by the energy and expectation-value
/// closed forms, so that each quantity is computed in exactly one place.
///
///   s       = 4 D b^2 / (kappa a^2)
///   Lambda  = sqrt((1+2l)^2 + s)
///   eta     = (1 + Lambda)/2
///   g       = b (2+b) D / (kappa a^2)
///   omega   = (g - (n+eta)^2) / (2 (n+eta));  bound window is omega > 0
///   lambda_ = (1+2l) / Lambda, in (0, 1]
///   chi     = -lambda_ (g + (n+eta)^2) / (2 (n+eta)^2), < 0
///   zeta    = s / (4 D Lambda), 1/eV
///   Omega_  = (g (n+eta)/D - g zeta - zeta (n+eta)^2) / (2 (n+eta)^2), 1/eV
struct SpectralIntermediates {
  double b;
  double s;
  double Lambda;
  double eta;
  double g;
  double omega;
  double lambda_;
  double chi;
  double zeta;
  double Omega_;
  double kappa_a2;  ///< kappa(mu) * a^2, eV
};

/// l is a real parameter here: the closed forms are smooth in l, which the
/// finite-difference identity checks rely on. Defined even past the bound
/// window (omega may be <= 0 there).
inline SpectralIntermediates intermediates(const MoleculeParams& p, int n, double l) {
  const DengFanShape sh = shape(p);
  SpectralIntermediates iv{};
  iv.b = sh.b;
  iv.kappa_a2 = kappa(p.mu) * p.a * p.a;
  iv.s = 4.0 * p.D * sh.b * sh.b / iv.kappa_a2;
  const double one_2l = 1.0 + 2.0 * l;
  iv.Lambda = std::sqrt(one_2l * one_2l + iv.s);
  iv.eta = 0.5 * (1.0 + iv.Lambda);
  iv.g = sh.b * (2.0 + sh.b) * p.D / iv.kappa_a2;
  const double ne = n + iv.eta;
  iv.omega = (iv.g - ne * ne) / (2.0 * ne);
  iv.lambda_ = one_2l / iv.Lambda;
  iv.chi = -iv.lambda_ * (iv.g + ne * ne) / (2.0 * ne * ne);
  iv.zeta = iv.s / (4.0 * p.D * iv.Lambda);
  iv.Omega_ = (iv.g * ne / p.D - iv.g * iv.zeta - iv.zeta * ne * ne) / (2.0 * ne * ne);
  return iv;
}

inline SpectralIntermediates intermediates(const MoleculeParams& p, QuantumState st) {
  return intermediates(p, st.n, static_cast<double>(st.l));
}

/// Largest n with omega > 0, i.e. floor(sqrt(g) - eta); -1 when no state
/// is bound at this l. The window is an engineering closure: it marks E
/// below the asymptote kappa a^2 C0 l(l+1) of the approximated effective
/// potential, which sits slightly above zero for l > 0.
inline int n_max(const MoleculeParams& p, double l = 0.0) {
  const SpectralIntermediates iv = intermediates(p, 0, l);
  const double sqrt_g = std::sqrt(iv.g);
  int nm = static_cast<int>(std::floor(sqrt_g - iv.eta));
  while (nm >= 0 && !(iv.g > (nm + iv.eta) * (nm + iv.eta))) --nm;
  while (iv.g > (nm + 1 + iv.eta) * (nm + 1 + iv.eta)) ++nm;
  return nm;
}

inline bool is_bound(const MoleculeParams& p, int n, double l) {
  return n >= 0 && intermediates(p, n, l).omega > 0.0;
}

inline bool is_bound(const MoleculeParams& p, QuantumState st) {
  return is_bound(p, st.n, static_cast<double>(st.l));
}

/// Closed-form level E = kappa a^2 (C0 l(l+1) - omega^2).
/// Throws unbound_state_error (carrying n_max at this l) past the window.
inline double energy(const MoleculeParams& p, int n, double l) {
  const SpectralIntermediates iv = intermediates(p, n, l);
  if (!(iv.omega > 0.0))
    throw unbound_state_error("energy: state n=" + std::to_string(n) + " is not bound for " +
                                  p.name + " (n_max=" + std::to_string(n_max(p, l)) + ")",
                              n_max(p, l));
  return iv.kappa_a2 * (centrifugal_c0 * l * (l + 1.0) - iv.omega * iv.omega);
}

inline double energy(const MoleculeParams& p, QuantumState st) {
  return energy(p, st.n, static_cast<double>(st.l));
}

}  // namespace dengfan
