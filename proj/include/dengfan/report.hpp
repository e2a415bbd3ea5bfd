#pragma once

#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "dengfan/expectation.hpp"
#include "dengfan/format.hpp"
#include "dengfan/radial_solver.hpp"

namespace dengfan {

/// One output row: energy and expectation values of a single bound state.
struct StateReport {
  std::string molecule;
  int n = 0;
  int l = 0;
  double r2 = 0.0;          ///< <r^-2>, 1/Angstrom^2
  double V = 0.0;           ///< eV
  double T = 0.0;           ///< eV
  double E = 0.0;           ///< eV
  double p2_paper = 0.0;    ///< table-scale column
  double p2_natural = 0.0;  ///< (eV/c)^2
};

inline StateReport state_report(const MoleculeParams& p, QuantumState st) {
  StateReport r;
  r.molecule = p.name;
  r.n = st.n;
  r.l = st.l;
  r.E = energy(p, st);
  r.r2 = expect_r2(p, st);
  r.V = expect_V(p, st);
  r.T = expect_T(p, st);
  const MomentumSquared p2 = expect_p2(p, st);
  r.p2_natural = p2.natural;
  r.p2_paper = p2.paper_scale;
  return r;
}

inline constexpr std::string_view report_csv_header =
    "molecule,n,l,r2_invA2,V_eV,T_eV,E_eV,p2_paper,p2_natural_eVc2";

inline void write_reports_csv(std::ostream& out, std::span<const StateReport> rows) {
  out << report_csv_header << '\n';
  for (const auto& r : rows) {
    out << r.molecule << ',' << r.n << ',' << r.l << ',' << format_sig10(r.r2) << ','
        << format_sig10(r.V) << ',' << format_sig10(r.T) << ',' << format_sig10(r.E) << ','
        << format_sig10(r.p2_paper) << ',' << format_sig10(r.p2_natural) << '\n';
  }
}

inline void write_reports_json(std::ostream& out, std::span<const StateReport> rows) {
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << "  {\"molecule\":\"" << r.molecule << "\",\"n\":" << r.n << ",\"l\":" << r.l
        << ",\"r2_invA2\":" << format_sig10(r.r2) << ",\"V_eV\":" << format_sig10(r.V)
        << ",\"T_eV\":" << format_sig10(r.T) << ",\"E_eV\":" << format_sig10(r.E)
        << ",\"p2_paper\":" << format_sig10(r.p2_paper)
        << ",\"p2_natural_eVc2\":" << format_sig10(r.p2_natural) << '}'
        << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

inline void write_reports_pretty(std::ostream& out, std::span<const StateReport> rows) {
  out << std::left << std::setw(10) << "molecule" << std::right << std::setw(4) << "n"
      << std::setw(4) << "l" << std::setw(17) << "r2_invA2" << std::setw(17) << "V_eV"
      << std::setw(17) << "T_eV" << std::setw(17) << "E_eV" << std::setw(17) << "p2_paper"
      << std::setw(18) << "p2_natural_eVc2" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(10) << r.molecule << std::right << std::setw(4) << r.n
        << std::setw(4) << r.l << std::setw(17) << format_sig10(r.r2) << std::setw(17)
        << format_sig10(r.V) << std::setw(17) << format_sig10(r.T) << std::setw(17)
        << format_sig10(r.E) << std::setw(17) << format_sig10(r.p2_paper) << std::setw(18)
        << format_sig10(r.p2_natural) << '\n';
  }
}

/// Wavefunction dump format of the numerical solver.
inline void write_wavefunction_csv(std::ostream& out, const RadialSolution& sol) {
  out << "r_angstrom,psi\n";
  for (int i = 0; i < static_cast<int>(sol.wavefunction.size()); ++i)
    out << format_sig10(sol.grid.point(i)) << ',' << format_sig10(sol.wavefunction[i]) << '\n';
}

}  // namespace dengfan
