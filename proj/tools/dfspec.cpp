// dfspec: ro-vibrational spectra, expectation values, fixture validation,
// numerical-eigensolver cross-checks, and quantization-rule verification
// for diatomic molecules in the shifted Deng-Fan potential.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dengfan/dengfan.hpp"

namespace {

using namespace dengfan;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitMissingFixture = 4;
constexpr int kExitSolver = 5;

struct bad_input : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct missing_fixture : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// option plumbing

struct CommonOpts {
  std::vector<std::string> molecules{"all"};
  std::vector<std::string> n_tokens{"0..3"};
  std::vector<std::string> l_tokens{"0..5"};
  std::string format = "pretty";
  std::string out_path;
  std::string params_file;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_ranges = true) {
  cmd->add_option("--molecule", o.molecules, "molecule names, or 'all'")
      ->delimiter(',')
      ->expected(-1);
  if (with_ranges) {
    cmd->add_option("--n", o.n_tokens, "vibrational numbers: A..B ranges or integers")
        ->delimiter(',')
        ->expected(-1);
    cmd->add_option("--l", o.l_tokens, "rotational numbers: A..B ranges or integers")
        ->delimiter(',')
        ->expected(-1);
  }
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}));
  cmd->add_option("--out", o.out_path, "write output to this file instead of stdout");
  cmd->add_option("--params", o.params_file,
                  "molecule CSV extending the built-in registry (name collisions override)");
}

int parse_nonneg_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size() || v < 0) throw bad_input("");
    return v;
  } catch (...) {
    throw bad_input(std::string(what) + ": expected a non-negative integer, got '" + s + "'");
  }
}

std::vector<int> parse_index_tokens(const std::vector<std::string>& tokens, const char* what) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    const auto dots = t.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_nonneg_int(t, what));
    } else {
      const int lo = parse_nonneg_int(t.substr(0, dots), what);
      const int hi = parse_nonneg_int(t.substr(dots + 2), what);
      if (hi < lo) throw bad_input(std::string(what) + ": empty range '" + t + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw bad_input(std::string(what) + ": empty selection");
  return out;
}

std::vector<MoleculeParams> load_registry(const std::string& params_file) {
  std::vector<MoleculeParams> reg = builtin_registry();
  if (!params_file.empty()) {
    std::ifstream in(params_file);
    if (!in) throw io_failure("cannot open params file " + params_file);
    for (auto& extra : parse_params_csv(in)) {
      auto it = std::find_if(reg.begin(), reg.end(),
                             [&](const MoleculeParams& m) { return m.name == extra.name; });
      if (it != reg.end())
        *it = std::move(extra);
      else
        reg.push_back(std::move(extra));
    }
  }
  return reg;
}

std::vector<MoleculeParams> resolve_molecules(const CommonOpts& o) {
  const std::vector<MoleculeParams> reg = load_registry(o.params_file);
  if (o.molecules.size() == 1 && o.molecules[0] == "all") return reg;
  std::vector<MoleculeParams> out;
  for (const auto& name : o.molecules) {
    auto it = std::find_if(reg.begin(), reg.end(),
                           [&](const MoleculeParams& m) { return m.name == name; });
    if (it == reg.end()) throw bad_input("unknown molecule '" + name + "'");
    out.push_back(*it);
  }
  return out;
}

void write_output(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    if (!std::cout.good()) throw io_failure("writing to stdout failed");
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out) throw io_failure("cannot open output file " + o.out_path);
  out << text;
  out.flush();
  if (!out.good()) throw io_failure("writing to " + o.out_path + " failed");
}

fs::path fixture_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("DFSPEC_FIXTURES")) return env;
#ifdef DFSPEC_DEFAULT_FIXTURES
  return DFSPEC_DEFAULT_FIXTURES;
#else
  return "fixtures/tables";
#endif
}

// ---------------------------------------------------------------------------
// deterministic parallel map over cells; ordering is imposed by index, so
// thread scheduling never affects the bytes written

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = std::min<std::size_t>(hw ? hw : 1, count);
  if (workers < 2 || count < 32) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// generic table document: pre-formatted cells, three renderings

struct Cell {
  std::string text;  // empty means missing (JSON null)
  bool numeric = false;
};

Cell num_cell(double v) { return {format_sig10(v), true}; }
Cell int_cell(int v) { return {std::to_string(v), true}; }
Cell text_cell(std::string s) { return {std::move(s), false}; }

struct TableDoc {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream out;
    if (format == "csv") {
      for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
      for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
          out << row[c].text << (c + 1 < row.size() ? "," : "\n");
    } else if (format == "json") {
      out << "[\n";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << "  {";
        for (std::size_t c = 0; c < columns.size(); ++c) {
          out << '"' << columns[c] << "\":";
          const Cell& cell = rows[r][c];
          if (cell.text.empty())
            out << "null";
          else if (cell.numeric)
            out << cell.text;
          else
            out << '"' << cell.text << '"';
          if (c + 1 < columns.size()) out << ',';
        }
        out << '}' << (r + 1 < rows.size() ? "," : "") << '\n';
      }
      out << "]\n";
    } else {
      std::vector<std::size_t> width(columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
      for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c)
          width[c] = std::max(width[c], row[c].text.size());
      for (std::size_t c = 0; c < columns.size(); ++c)
        out << std::setw(static_cast<int>(width[c]) + (c ? 2 : 0)) << columns[c];
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
          out << std::setw(static_cast<int>(width[c]) + (c ? 2 : 0)) << row[c].text;
        out << '\n';
      }
    }
    return out.str();
  }
};

// ---------------------------------------------------------------------------
// subcommands

int cmd_energies(const CommonOpts& o) {
  const auto molecules = resolve_molecules(o);
  const auto ns = parse_index_tokens(o.n_tokens, "--n");
  const auto ls = parse_index_tokens(o.l_tokens, "--l");

  struct EntryKey {
    const MoleculeParams* mol;
    int n, l;
  };
  std::vector<EntryKey> cells;
  for (const auto& m : molecules)
    for (int n : ns)
      for (int l : ls) cells.push_back({&m, n, l});

  std::vector<std::optional<double>> energies(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& c = cells[i];
    if (is_bound(*c.mol, {c.n, c.l})) energies[i] = energy(*c.mol, {c.n, c.l});
  });

  TableDoc doc;
  doc.columns = {"molecule", "n", "l", "E_eV", "status"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    doc.rows.push_back({text_cell(c.mol->name), int_cell(c.n), int_cell(c.l),
                        energies[i] ? num_cell(*energies[i]) : Cell{},
                        text_cell(energies[i] ? "bound" : "unbound")});
  }
  write_output(o, doc.render(o.format));
  return kExitOk;
}

int cmd_expect(const CommonOpts& o) {
  const auto molecules = resolve_molecules(o);
  const auto ns = parse_index_tokens(o.n_tokens, "--n");
  const auto ls = parse_index_tokens(o.l_tokens, "--l");

  struct EntryKey {
    const MoleculeParams* mol;
    int n, l;
  };
  std::vector<EntryKey> cells;
  for (const auto& m : molecules)
    for (int n : ns)
      for (int l : ls) {
        if (is_bound(m, {n, l})) {
          cells.push_back({&m, n, l});
        } else {
          std::cerr << "note: " << m.name << " n=" << n << " l=" << l << " unbound (n_max="
                    << n_max(m, static_cast<double>(l)) << "); row omitted\n";
        }
      }

  std::vector<StateReport> rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    rows[i] = state_report(*cells[i].mol, {cells[i].n, cells[i].l});
  });

  std::ostringstream out;
  if (o.format == "csv")
    write_reports_csv(out, rows);
  else if (o.format == "json")
    write_reports_json(out, rows);
  else
    write_reports_pretty(out, rows);
  write_output(o, out.str());
  return kExitOk;
}

struct ValidateTols {
  double e = 1e-6;   // eV, absolute
  double v = 1e-6;   // eV, absolute
  double t = 1e-6;   // eV, absolute
  double r2 = 1e-6;  // relative
  double p2 = 2e-3;  // relative, table scale
};

int cmd_validate(const CommonOpts& o, const ValidateTols& tol, const std::string& fixtures_flag) {
  const auto molecules = resolve_molecules(o);
  const fs::path dir = fixture_dir(fixtures_flag);

  struct Offender {
    std::string cell;
    double deviation;
    double tolerance;
  };
  std::vector<Offender> offenders;
  double max_de = 0.0, max_dv = 0.0, max_dt = 0.0, max_dr2 = 0.0, max_dp2 = 0.0;
  std::size_t cells = 0;

  for (const auto& m : molecules) {
    std::vector<FixtureRow> fixture;
    try {
      fixture = load_fixture(dir, m.name);
    } catch (const std::exception& e) {
      throw missing_fixture(e.what());
    }
    for (const auto& row : fixture) {
      ++cells;
      const std::string cell_name =
          m.name + "(n=" + std::to_string(row.n) + ",l=" + std::to_string(row.l) + ")";
      StateReport rep;
      try {
        rep = state_report(m, {row.n, row.l});
      } catch (const unbound_state_error&) {
        offenders.push_back({cell_name + " unexpectedly unbound", 0.0, 0.0});
        continue;
      }
      const double de = std::fabs(rep.E - row.E);
      const double dv = std::fabs(rep.V - row.V);
      const double dt = std::fabs(rep.T - row.T);
      const double dr2 = std::fabs(rep.r2 - row.r2) / std::fabs(row.r2);
      const double dp2 = std::fabs(rep.p2_paper - row.p2_paper) / std::fabs(row.p2_paper);
      max_de = std::max(max_de, de);
      max_dv = std::max(max_dv, dv);
      max_dt = std::max(max_dt, dt);
      max_dr2 = std::max(max_dr2, dr2);
      max_dp2 = std::max(max_dp2, dp2);
      if (de > tol.e) offenders.push_back({cell_name + " E_eV", de, tol.e});
      if (dv > tol.v) offenders.push_back({cell_name + " V_eV", dv, tol.v});
      if (dt > tol.t) offenders.push_back({cell_name + " T_eV", dt, tol.t});
      if (dr2 > tol.r2) offenders.push_back({cell_name + " r2_invA2", dr2, tol.r2});
      if (dp2 > tol.p2) offenders.push_back({cell_name + " p2_paper", dp2, tol.p2});
    }
  }

  std::ostringstream out;
  out << "validated " << cells << " cells over " << molecules.size() << " molecule(s) from "
      << dir.string() << "\n";
  out << "  max |dE|  = " << format_sig10(max_de) << " eV (tol " << format_sig10(tol.e) << ")\n";
  out << "  max |dV|  = " << format_sig10(max_dv) << " eV (tol " << format_sig10(tol.v) << ")\n";
  out << "  max |dT|  = " << format_sig10(max_dt) << " eV (tol " << format_sig10(tol.t) << ")\n";
  out << "  max |dr2| = " << format_sig10(max_dr2) << " rel (tol " << format_sig10(tol.r2)
      << ")\n";
  out << "  max |dp2| = " << format_sig10(max_dp2) << " rel (tol " << format_sig10(tol.p2)
      << ")\n";
  if (offenders.empty()) {
    out << "PASS\n";
    write_output(o, out.str());
    return kExitOk;
  }
  out << "FAIL: " << offenders.size() << " cell(s) out of tolerance\n";
  for (const auto& off : offenders)
    out << "  " << off.cell << ": deviation " << format_sig10(off.deviation) << " > tol "
        << format_sig10(off.tolerance) << "\n";
  write_output(o, out.str());
  return kExitValidation;
}

struct OracleOpts {
  double r_min = 0.0;  // 0 = per-molecule default
  double r_max = 0.0;
  int grid_count = 0;
  std::string mode = "both";
  std::string dump_dir;
};

int cmd_oracle(const CommonOpts& o, const OracleOpts& oo) {
  const auto molecules = resolve_molecules(o);
  const auto ns = parse_index_tokens(o.n_tokens, "--n");
  const auto ls = parse_index_tokens(o.l_tokens, "--l");
  const int n_states = *std::max_element(ns.begin(), ns.end()) + 1;
  const bool run_approx = oo.mode != "exact";
  const bool run_exact = oo.mode != "approx";

  TableDoc doc;
  doc.columns = {"molecule", "n",         "l",           "E_closed_eV", "E_fd_approx_eV",
                 "delta_approx_eV", "E_fd_exact_eV", "delta_exact_eV"};

  for (const auto& m : molecules) {
    RadialGrid grid = default_grid(m);
    if (oo.r_min > 0.0) grid.r_min = oo.r_min;
    if (oo.r_max > 0.0) grid.r_max = oo.r_max;
    if (oo.grid_count > 0) grid.count = oo.grid_count;
    for (int l : ls) {
      std::optional<RadialSolveResult> approx, exact;
      if (run_approx) approx = solve_radial(m, l, CentrifugalMode::approx, grid, n_states);
      if (run_exact) exact = solve_radial(m, l, CentrifugalMode::exact, grid, n_states);
      for (int n : ns) {
        std::optional<double> closed;
        if (is_bound(m, {n, l})) closed = energy(m, {n, l});
        auto fd_cell = [&](const std::optional<RadialSolveResult>& res) -> Cell {
          if (!res || n >= static_cast<int>(res->states.size())) return {};
          return num_cell(res->states[n].eigenvalue);
        };
        auto delta_cell = [&](const std::optional<RadialSolveResult>& res) -> Cell {
          if (!res || !closed || n >= static_cast<int>(res->states.size())) return {};
          return num_cell(res->states[n].eigenvalue - *closed);
        };
        doc.rows.push_back({text_cell(m.name), int_cell(n), int_cell(l),
                            closed ? num_cell(*closed) : Cell{}, fd_cell(approx),
                            delta_cell(approx), fd_cell(exact), delta_cell(exact)});
      }
      if (!oo.dump_dir.empty()) {
        std::error_code ec;
        fs::create_directories(oo.dump_dir, ec);
        auto dump = [&](const RadialSolveResult& res, const char* mode_name) {
          for (int n : ns) {
            if (n >= static_cast<int>(res.states.size())) continue;
            const fs::path file = fs::path(oo.dump_dir) /
                                  (m.name + "_n" + std::to_string(n) + "_l" + std::to_string(l) +
                                   "_" + mode_name + ".csv");
            std::ofstream out(file);
            if (!out) throw io_failure("cannot open " + file.string());
            write_wavefunction_csv(out, res.states[n]);
            if (!out.good()) throw io_failure("writing " + file.string() + " failed");
          }
        };
        if (approx) dump(*approx, "approx");
        if (exact) dump(*exact, "exact");
      }
    }
  }
  write_output(o, doc.render(o.format));
  return kExitOk;
}

struct RuleOpts {
  double tol = 1e-6;
  bool hft = false;
};

int cmd_verify_rule(const CommonOpts& o, const RuleOpts& ro) {
  const auto molecules = resolve_molecules(o);
  const auto ns = parse_index_tokens(o.n_tokens, "--n");
  const auto ls = parse_index_tokens(o.l_tokens, "--l");

  struct EntryKey {
    const MoleculeParams* mol;
    int n, l;
  };
  std::vector<EntryKey> cells;
  for (const auto& m : molecules)
    for (int n : ns)
      for (int l : ls) {
        if (is_bound(m, {n, l})) {
          cells.push_back({&m, n, l});
        } else {
          std::cerr << "note: " << m.name << " n=" << n << " l=" << l
                    << " unbound; skipped\n";
        }
      }

  struct Row {
    double E, residual;
    HftResiduals hft;
  };
  std::vector<Row> rows(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& c = cells[i];
    Row r{};
    r.E = energy(*c.mol, {c.n, c.l});
    r.residual = proper_rule_residual(*c.mol, c.n, c.l);
    if (ro.hft) r.hft = hft_fd_check(*c.mol, {c.n, c.l});
    rows[i] = r;
  });

  TableDoc doc;
  doc.columns = {"molecule", "n", "l", "E_eV", "rule_residual"};
  if (ro.hft) {
    doc.columns.push_back("hft_res_V");
    doc.columns.push_back("hft_res_T");
    doc.columns.push_back("hft_res_r2");
  }
  bool all_ok = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const Row& r = rows[i];
    all_ok = all_ok && r.residual <= ro.tol;
    std::vector<Cell> row{text_cell(c.mol->name), int_cell(c.n), int_cell(c.l), num_cell(r.E),
                          num_cell(r.residual)};
    if (ro.hft) {
      row.push_back(num_cell(r.hft.res_V));
      row.push_back(num_cell(r.hft.res_T));
      row.push_back(num_cell(r.hft.res_r2));
    }
    doc.rows.push_back(std::move(row));
  }
  write_output(o, doc.render(o.format));
  return all_ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed-form ro-vibrational spectra for the shifted Deng-Fan potential, "
               "with numerical cross-checks"};
  app.require_subcommand(1);

  CommonOpts en_opts, ex_opts, va_opts, or_opts, vr_opts;
  ValidateTols tols;
  std::string fixtures_flag;
  OracleOpts oracle_opts;
  RuleOpts rule_opts;

  CLI::App* c_en = app.add_subcommand("energies", "closed-form energy levels");
  add_common(c_en, en_opts);

  CLI::App* c_ex = app.add_subcommand("expect", "energies plus expectation values");
  add_common(c_ex, ex_opts);

  CLI::App* c_va = app.add_subcommand("validate", "compare against the reference fixtures");
  add_common(c_va, va_opts);
  c_va->add_option("--fixtures", fixtures_flag,
                   "fixture directory (default: DFSPEC_FIXTURES env or built-in path)");
  c_va->add_option("--tol-e", tols.e, "energy tolerance, eV absolute");
  c_va->add_option("--tol-v", tols.v, "<V> tolerance, eV absolute");
  c_va->add_option("--tol-t", tols.t, "<T> tolerance, eV absolute");
  c_va->add_option("--tol-r2", tols.r2, "<r^-2> tolerance, relative");
  c_va->add_option("--tol-p2", tols.p2, "<p^2> tolerance, relative");

  CLI::App* c_or = app.add_subcommand("oracle", "finite-difference eigensolver cross-check");
  add_common(c_or, or_opts);
  or_opts.n_tokens = {"0..3"};
  or_opts.l_tokens = {"0"};
  c_or->add_option("--rmin", oracle_opts.r_min, "grid start, Angstrom");
  c_or->add_option("--rmax", oracle_opts.r_max, "grid end, Angstrom");
  c_or->add_option("--grid-count", oracle_opts.grid_count, "interior grid points");
  c_or->add_option("--mode", oracle_opts.mode, "centrifugal mode")
      ->check(CLI::IsMember({"exact", "approx", "both"}));
  c_or->add_option("--dump-psi", oracle_opts.dump_dir,
                   "write wavefunction CSVs (one file per molecule, n, l, mode)");

  CLI::App* c_vr = app.add_subcommand("verify-rule", "quantization-rule residuals");
  add_common(c_vr, vr_opts);
  vr_opts.l_tokens = {"0", "2", "5"};
  c_vr->add_option("--tol-rule", rule_opts.tol, "residual tolerance");
  c_vr->add_flag("--hft", rule_opts.hft, "also print parameter-derivative residuals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (app.got_subcommand(c_en)) return cmd_energies(en_opts);
    if (app.got_subcommand(c_ex)) return cmd_expect(ex_opts);
    if (app.got_subcommand(c_va)) return cmd_validate(va_opts, tols, fixtures_flag);
    if (app.got_subcommand(c_or)) return cmd_oracle(or_opts, oracle_opts);
    if (app.got_subcommand(c_vr)) return cmd_verify_rule(vr_opts, rule_opts);
  } catch (const missing_fixture& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMissingFixture;
  } catch (const io_failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const solver_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const bad_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
