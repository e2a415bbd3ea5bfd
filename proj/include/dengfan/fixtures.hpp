#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include "dengfan/molecule.hpp"

namespace dengfan {

/// One transcribed reference-table cell.
struct FixtureRow {
  std::string molecule;
  int n = 0;
  int l = 0;
  double r2 = 0.0;
  double V = 0.0;
  double T = 0.0;
  double E = 0.0;
  double p2_paper = 0.0;
};

inline constexpr std::string_view fixture_csv_header =
    "molecule,n,l,r2_invA2,V_eV,T_eV,E_eV,p2_paper";

inline std::vector<FixtureRow> read_fixture_csv(std::istream& in) {
  std::vector<FixtureRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (!header_seen) {
      if (sv != fixture_csv_header)
        throw parse_error("line " + std::to_string(line_no) + ": expected fixture header",
                          line_no);
      header_seen = true;
      continue;
    }
    auto fields = detail::split_csv(sv);
    if (fields.size() != 8)
      throw parse_error("line " + std::to_string(line_no) + ": expected 8 fields", line_no);
    FixtureRow r;
    r.molecule = std::string(fields[0]);
    r.n = static_cast<int>(detail::parse_double_field(fields[1], line_no));
    r.l = static_cast<int>(detail::parse_double_field(fields[2], line_no));
    r.r2 = detail::parse_double_field(fields[3], line_no);
    r.V = detail::parse_double_field(fields[4], line_no);
    r.T = detail::parse_double_field(fields[5], line_no);
    r.E = detail::parse_double_field(fields[6], line_no);
    r.p2_paper = detail::parse_double_field(fields[7], line_no);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw parse_error("missing fixture header", line_no);
  return rows;
}

/// Load <dir>/<molecule>.csv; throws std::runtime_error when absent.
inline std::vector<FixtureRow> load_fixture(const std::filesystem::path& dir,
                                            const std::string& molecule) {
  const std::filesystem::path file = dir / (molecule + ".csv");
  std::ifstream in(file);
  if (!in) throw std::runtime_error("missing fixture file " + file.string());
  return read_fixture_csv(in);
}

}  // namespace dengfan
