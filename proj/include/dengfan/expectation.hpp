#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "dengfan/spectrum.hpp"

namespace dengfan {

namespace detail {

inline SpectralIntermediates bound_intermediates(const MoleculeParams& p, QuantumState st,
                                                 const char* op) {
  const SpectralIntermediates iv = intermediates(p, st);
  if (!(iv.omega > 0.0))
    throw unbound_state_error(std::string(op) + ": state n=" + std::to_string(st.n) +
                                  " l=" + std::to_string(st.l) + " is not bound for " + p.name,
                              n_max(p, static_cast<double>(st.l)));
  return iv;
}

}  // namespace detail

/// <r^-2> in 1/Angstrom^2: a^2 (C0 - 2 omega chi / (1+2l)). Always > 0 for
/// bound states (chi < 0). This is the expectation of the exponential
/// centrifugal stand-in, consistent with dE/dl.
inline double expect_r2(const MoleculeParams& p, QuantumState st) {
  const auto iv = detail::bound_intermediates(p, st, "expect_r2");
  return p.a * p.a * (centrifugal_c0 - 2.0 * iv.omega * iv.chi / (1.0 + 2.0 * st.l));
}

/// <V> in eV: -2 kappa a^2 D omega Omega_.
inline double expect_V(const MoleculeParams& p, QuantumState st) {
  const auto iv = detail::bound_intermediates(p, st, "expect_V");
  return -2.0 * iv.kappa_a2 * p.D * iv.omega * iv.Omega_;
}

/// <T> in eV, computed as E - <V>. The tabulated reference data satisfies
/// T = E - V exactly, and every mu-dependent Hamiltonian term scales as
/// 1/mu, so this equals -mu dE/dmu. (The variant with the opposite
/// relative sign yields negative kinetic energies; see README.)
inline double expect_T(const MoleculeParams& p, QuantumState st) {
  return energy(p, st) - expect_V(p, st);
}

/// <p^2> in both conventions.
struct MomentumSquared {
  double natural;      ///< 2 mu c^2 <T>, (eV/c)^2 i.e. eV^2 numerically
  double paper_scale;  ///< natural / (3e8)^2, the reference-table column
};

inline MomentumSquared expect_p2(const MoleculeParams& p, QuantumState st) {
  const double natural = 2.0 * amu_to_evc2(p.mu) * expect_T(p, st);
  return {natural, natural / (constants.c_si * constants.c_si)};
}

/// Plain second-order central difference.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Derivative by a converged step ladder: halve the step, Richardson-combine
/// successive central differences, and keep the estimate where consecutive
/// extrapolations agree best (past that point cancellation noise grows).
inline double fd_derivative(const std::function<double(double)>& f, double x, double h0,
                            int max_halvings = 24) {
  double h = h0;
  double d_prev = central_difference(f, x, h);
  double best = d_prev;
  double best_err = std::numeric_limits<double>::infinity();
  bool have_prev_extrap = false;
  double prev_extrap = 0.0;
  for (int i = 0; i < max_halvings; ++i) {
    h *= 0.5;
    const double d_cur = central_difference(f, x, h);
    const double extrap = (4.0 * d_cur - d_prev) / 3.0;
    if (have_prev_extrap) {
      const double err = std::fabs(extrap - prev_extrap);
      if (err < best_err) {
        best_err = err;
        best = extrap;
      } else if (err > 4.0 * best_err) {
        break;  // noise regime reached
      }
    }
    prev_extrap = extrap;
    have_prev_extrap = true;
    d_prev = d_cur;
  }
  return best;
}

/// Relative residuals of the parameter-derivative identities
///   <V>     = D dE/dD
///   <T>     = -mu dE/dmu
///   <r^-2>  = (dE/dl) / (kappa (2l+1))
/// against the closed forms above.
struct HftResiduals {
  double res_V;
  double res_T;
  double res_r2;
};

/// converge = true: steps are ladder starting points, halved to the noise
/// floor (fd_derivative). converge = false: one central difference at the
/// given step plus a single Richardson halving. The fixed mode is fine for
/// light molecules but loses digits for stiff ones (s ~ 1e9), where the
/// l dependence sits under sqrt((1+2l)^2 + s).
struct FdStepPolicy {
  double rel_step_D = 0.05;
  double rel_step_mu = 0.05;
  double abs_step_l = 0.5;
  bool converge = true;
  int max_halvings = 24;
};

namespace detail {

inline double fd_fixed_richardson(const std::function<double(double)>& f, double x, double h) {
  const double d1 = central_difference(f, x, h);
  const double d2 = central_difference(f, x, 0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

/// Shrink the starting step until x +- h stays inside the bound window.
inline double admissible_step(const std::function<double(double)>& f, double x, double h,
                              bool allow_shrink) {
  for (int i = 0; i < 60; ++i) {
    try {
      (void)f(x + h);
      (void)f(x - h);
      return h;
    } catch (const unbound_state_error&) {
      if (!allow_shrink)
        throw std::domain_error(
            "hft_fd_check: perturbed state left the bound window; use a smaller step");
      h *= 0.5;
    }
  }
  throw std::domain_error("hft_fd_check: no admissible finite-difference step");
}

}  // namespace detail

inline HftResiduals hft_fd_check(const MoleculeParams& p, QuantumState st,
                                 const FdStepPolicy& policy = {}) {
  const double V = expect_V(p, st);
  const double T = expect_T(p, st);
  const double r2 = expect_r2(p, st);

  const std::function<double(double)> f_D = [&](double d) {
    MoleculeParams q = p;
    q.D = d;
    return energy(q, st.n, static_cast<double>(st.l));
  };
  const std::function<double(double)> f_mu = [&](double m) {
    MoleculeParams q = p;
    q.mu = m;
    return energy(q, st.n, static_cast<double>(st.l));
  };
  const std::function<double(double)> f_l = [&](double l) { return energy(p, st.n, l); };

  const auto deriv = [&](const std::function<double(double)>& f, double x, double h0) {
    const double h = detail::admissible_step(f, x, h0, policy.converge);
    return policy.converge ? fd_derivative(f, x, h, policy.max_halvings)
                           : detail::fd_fixed_richardson(f, x, h);
  };

  const double dE_dD = deriv(f_D, p.D, policy.rel_step_D * p.D);
  const double dE_dmu = deriv(f_mu, p.mu, policy.rel_step_mu * p.mu);
  const double dE_dl = deriv(f_l, static_cast<double>(st.l), policy.abs_step_l);

  const double k = kappa(p.mu);
  return {std::fabs(p.D * dE_dD - V) / std::fabs(V),
          std::fabs(-p.mu * dE_dmu - T) / std::fabs(T),
          std::fabs(dE_dl / (k * (2.0 * st.l + 1.0)) - r2) / std::fabs(r2)};
}

}  // namespace dengfan
