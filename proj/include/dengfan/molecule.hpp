#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dengfan/errors.hpp"

namespace dengfan {

/// Model parameters of one diatomic molecule.
struct MoleculeParams {
  std::string name;
  double D;    ///< dissociation energy, eV
  double r_e;  ///< equilibrium inter-nuclear distance, Angstrom
  double a;    ///< potential range, 1/Angstrom
  double mu;   ///< reduced mass, amu
};

/// Column order of the molecule CSV interchange format.
inline constexpr std::string_view molecule_csv_header =
    "name,De_eV,re_angstrom,a_per_angstrom,mu_amu";

inline void validate(const MoleculeParams& p) {
  if (p.name.empty()) throw validation_error("molecule name must be non-empty");
  if (!(p.D > 0.0)) throw validation_error("molecule " + p.name + ": De_eV must be > 0");
  if (!(p.r_e > 0.0)) throw validation_error("molecule " + p.name + ": re_angstrom must be > 0");
  if (!(p.a > 0.0)) throw validation_error("molecule " + p.name + ": a_per_angstrom must be > 0");
  if (!(p.mu > 0.0)) throw validation_error("molecule " + p.name + ": mu_amu must be > 0");
}

/// The 14 built-in molecules, in reference-table order. Immutable.
inline const std::vector<MoleculeParams>& builtin_registry() {
  static const std::vector<MoleculeParams> registry = {
      {"HCl", 4.619030905, 1.2746, 1.8677, 0.9801045},
      {"LiH", 2.5152672118, 1.5956, 1.1280, 0.8801221},
      {"H2", 4.7446, 0.7416, 1.9426, 0.50391},
      {"ScH", 2.25, 1.776, 1.41113, 0.986040},
      {"ScN", 4.56, 1.768, 1.50680, 10.682771},
      {"TiH", 2.05, 1.781, 1.32408, 0.987371},
      {"VH", 2.33, 1.719, 1.44370, 0.988005},
      {"CrH", 2.13, 1.694, 1.52179, 0.988976},
      {"NiC", 2.76, 1.621, 2.25297, 9.974265},
      {"CuLi", 1.74, 2.310, 1.00818, 6.259494},
      {"TiC", 2.66, 1.790, 1.52550, 9.606079},
      {"ScF", 5.85, 1.794, 1.46102, 13.358942},
      {"CO", 11.2256, 1.1283, 2.2994, 6.8606719},
      {"I2", 1.5556, 2.662, 1.8643, 63.45223502},
  };
  return registry;
}

/// Case-sensitive lookup in the built-in registry; nullptr when absent.
inline const MoleculeParams* find_builtin(std::string_view name) {
  for (const auto& m : builtin_registry())
    if (m.name == name) return &m;
  return nullptr;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline double parse_double_field(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw parse_error("line " + std::to_string(line_no) + ": bad numeric field '" +
                          std::string(field) + "'",
                      line_no);
  return value;
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string shortest_decimal(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace detail

/// Parse the molecule CSV format: mandatory header, '#' comments allowed.
/// Throws parse_error (malformed line) or validation_error (bad values,
/// duplicate names).
inline std::vector<MoleculeParams> parse_params_csv(std::istream& in) {
  std::vector<MoleculeParams> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (!header_seen) {
      if (sv != molecule_csv_header)
        throw parse_error("line " + std::to_string(line_no) + ": expected header '" +
                              std::string(molecule_csv_header) + "'",
                          line_no);
      header_seen = true;
      continue;
    }
    auto fields = detail::split_csv(sv);
    if (fields.size() != 5)
      throw parse_error("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                            std::to_string(fields.size()),
                        line_no);
    MoleculeParams p;
    p.name = std::string(fields[0]);
    p.D = detail::parse_double_field(fields[1], line_no);
    p.r_e = detail::parse_double_field(fields[2], line_no);
    p.a = detail::parse_double_field(fields[3], line_no);
    p.mu = detail::parse_double_field(fields[4], line_no);
    validate(p);
    for (const auto& seen : out)
      if (seen.name == p.name)
        throw validation_error("duplicate molecule name '" + p.name + "'");
    out.push_back(std::move(p));
  }
  if (!header_seen) throw parse_error("missing header line", line_no);
  return out;
}

/// Inverse of parse_params_csv; values round-trip bit-for-bit.
inline void write_params_csv(std::ostream& out, std::span<const MoleculeParams> params) {
  out << molecule_csv_header << '\n';
  for (const auto& p : params) {
    out << p.name << ',' << detail::shortest_decimal(p.D) << ','
        << detail::shortest_decimal(p.r_e) << ',' << detail::shortest_decimal(p.a) << ','
        << detail::shortest_decimal(p.mu) << '\n';
  }
}

}  // namespace dengfan
