#include "skydyon/profile_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "skydyon/errors.hpp"

namespace skydyon {

namespace {

std::string num(real x, int digits = kProfileDigits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

real parse_real(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  real v = 0;
  try {
    v = std::stold(text, &used);
  } catch (const std::exception&) {
    throw ParameterError(field, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParameterError(field, "trailing characters in '" + text + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_profile_csv(std::ostream& out, const ModelParams& p, const FieldProfile& s) {
  const RadialGrid& grid = *s.grid;
  out << "# omega=" << num(p.omega) << '\n'
      << "# q=" << num(p.q) << '\n'
      << "# kappa=" << num(p.kappa) << '\n'
      << "# R=" << num(grid.R()) << '\n'
      << "# N=" << grid.N() << '\n'
      << "# grading=" << grid.grading().describe() << '\n'
      << "# outer=" << to_string(s.far_field.kind) << '\n'
      << "# tail_rate=" << num(s.far_field.tail_rate) << '\n'
      << "r,a,f,g\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << num(grid.r(i)) << ',' << num(s.a[i]) << ',' << num(s.f[i]) << ',' << num(s.g[i]) << '\n';
  }
}

void write_profile_csv(const std::string& path, const ModelParams& p, const FieldProfile& s) {
  std::ofstream out(path);
  if (!out) throw ParameterError("out", "cannot write " + path);
  write_profile_csv(out, p, s);
}

LoadedProfile read_profile_csv(std::istream& in) {
  std::map<std::string, std::string> header;
  std::vector<std::array<real, 4>> rows;
  std::string line;
  bool columns = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      header[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      continue;
    }
    if (!columns) {
      if (line != "r,a,f,g") throw ParameterError("csv", "expected column header 'r,a,f,g'");
      columns = true;
      continue;
    }
    std::array<real, 4> row{};
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, cell, ',')) throw ParameterError("csv", "short row: '" + line + "'");
      row[c] = parse_real(trim(cell), "csv");
    }
    if (std::getline(ss, cell, ',')) throw ParameterError("csv", "extra column in '" + line + "'");
    rows.push_back(row);
  }
  for (const char* key : {"omega", "q", "kappa", "R", "N", "grading"}) {
    if (!header.count(key)) throw ParameterError(key, "missing header line");
  }

  LoadedProfile out;
  out.omega = parse_real(header["omega"], "omega");
  out.q = parse_real(header["q"], "q");
  out.kappa = parse_real(header["kappa"], "kappa");
  const real R = parse_real(header["R"], "R");
  const real Nv = parse_real(header["N"], "N");
  if (!(Nv >= 1) || Nv != std::floor(Nv)) throw ParameterError("N", "must be a positive integer");
  const auto N = static_cast<std::size_t>(Nv);
  auto grid = std::make_shared<const RadialGrid>(build_grid(R, N, Grading::parse(header["grading"])));
  if (rows.size() != grid->size()) throw ParameterError("csv", "row count does not match N + 1");

  FarField far{OuterBoundary::dirichlet, 0};
  if (header.count("outer")) far.kind = parse_outer_boundary(header["outer"]);
  if (header.count("tail_rate")) far.tail_rate = parse_real(header["tail_rate"], "tail_rate");

  FieldProfile s = make_profile(grid, far);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const real r = grid->r(i);
    if (std::fabs(rows[i][0] - r) > 1e-15L * (1 + r)) {
      throw ParameterError("csv", "r column does not match the mesh at row " + std::to_string(i));
    }
    s.a[i] = rows[i][1];
    s.f[i] = rows[i][2];
    s.g[i] = rows[i][3];
  }
  out.profile = std::move(s);
  return out;
}

LoadedProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("csv", "cannot open " + path);
  return read_profile_csv(in);
}

void write_observables(std::ostream& out, const ModelParams& p, const ObservableReport& o,
                       const SolveReport* solve) {
  auto kv = [&](const char* key, real v) { out << key << " = " << num(v, 17) << '\n'; };
  kv("omega", p.omega);
  kv("q", p.q);
  kv("kappa", p.kappa);
  kv("q_max", p.q_max);
  kv("QS_numeric", o.QS_numeric);
  kv("QS_closed", o.QS_closed);
  kv("Qe", o.Qe);
  kv("Qm", o.Qm);
  kv("gamma_fit", o.gamma_fit);
  kv("gamma_theory", o.gamma_theory);
  kv("gamma_prefactor_power", o.fit.prefactor_power);
  kv("fit_r_lo", o.fit.r_lo);
  kv("fit_r_hi", o.fit.r_hi);
  out << "fit_nodes = " << o.fit.nodes << '\n';
  out << "fit_fallback = " << (o.fit.fallback ? "true" : "false") << '\n';
  if (!o.fit_error.empty()) out << "fit_error = " << o.fit_error << '\n';
  kv("cg_tail", o.tails.cg);
  kv("cg_variation", o.tails.cg_variation);
  kv("cf_tail", o.tails.cf);
  kv("cf_variation", o.tails.cf_variation);
  kv("tail_r_lo", o.tails.r_lo);
  kv("tail_r_hi", o.tails.r_hi);
  kv("E1", o.action.E1);
  kv("E2", o.action.E2);
  kv("E", o.action.E);
  kv("L", o.action.L);
  if (solve) {
    out << "converged = " << (solve->converged ? "true" : "false") << '\n';
    out << "path = " << to_string(solve->path) << '\n';
    out << "iterations = " << solve->iterations << '\n';
    kv("final_residual_norm", solve->final_residual_norm);
    if (!solve->message.empty()) out << "message = " << solve->message << '\n';
    for (std::size_t k = 0; k < solve->continuation_trace.size(); ++k) {
      const LegRecord& leg = solve->continuation_trace[k];
      out << "leg." << k << " = q " << num(leg.q, 17) << " converged " << (leg.converged ? 1 : 0)
          << " iterations " << leg.iterations << " residual " << num(leg.residual, 6) << " L "
          << num(leg.L, 17) << " path " << to_string(leg.path) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "omega,q,kappa,Qe,QS_numeric,QS_closed,gamma_fit,gamma_theory,E,L,converged\n";
  for (const SummaryRow& r : rows) {
    out << num(r.omega, 17) << ',' << num(r.q, 17) << ',' << num(r.kappa, 17) << ',' << num(r.Qe, 17) << ','
        << num(r.QS_numeric, 17) << ',' << num(r.QS_closed, 17) << ',' << num(r.gamma_fit, 17) << ','
        << num(r.gamma_theory, 17) << ',' << num(r.E, 17) << ',' << num(r.L, 17) << ','
        << (r.converged ? "true" : "false") << '\n';
  }
}

void write_series(const std::string& path, const std::vector<std::pair<real, real>>& points) {
  std::ofstream out(path);
  if (!out) throw ParameterError("out", "cannot write " + path);
  for (const auto& [x, y] : points) out << num(x, 17) << ' ' << num(y, 17) << '\n';
}

}  // namespace skydyon
