#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dengfan {

/// Requested (n, l) lies outside the bound-state window of the molecule.
/// Carries the largest bound n at this l (-1 when no state is bound).
struct unbound_state_error : std::domain_error {
  unbound_state_error(const std::string& what, int n_max_at_l)
      : std::domain_error(what), n_max(n_max_at_l) {}
  int n_max;
};

/// The energy does not cross the effective potential: no classically
/// allowed region, hence no turning points.
struct no_classical_region_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Malformed input text; line numbers are 1-based.
struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t line_no)
      : std::runtime_error(what), line(line_no) {}
  std::size_t line;
};

/// Structurally valid input carrying out-of-range values.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical backend failed to converge.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dengfan
