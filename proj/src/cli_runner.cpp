#include "skydyon/cli_runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "skydyon/errors.hpp"
#include "skydyon/inner_gsolve.hpp"
#include "skydyon/observables.hpp"
#include "skydyon/profile_io.hpp"
#include "skydyon/verify.hpp"

namespace skydyon {

namespace fs = std::filesystem;

real parse_number(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  real v = 0;
  try {
    v = std::stold(text, &used);
  } catch (const std::exception&) {
    throw ParameterError(field, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw ParameterError(field, "not a number: '" + text + "'");
  return v;
}

real parse_angle(const std::string& text) {
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    std::string head = text.substr(0, text.size() - 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head.empty() || head == "+") return pi;
    if (head == "-") return -pi;
    return parse_number(head, "omega") * pi;
  }
  return parse_number(text, "omega");
}

std::vector<real> parse_list(const std::string& text, const std::string& field, bool angles) {
  std::vector<real> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw ParameterError(field, "empty list entry");
    item = item.substr(b, e - b + 1);
    out.push_back(angles ? parse_angle(item) : parse_number(item, field));
  }
  return out;
}

namespace {

ModelParams params_of(const RunConfig& cfg) { return validate_params(cfg.omega, cfg.q, cfg.kappa); }

std::shared_ptr<const RadialGrid> grid_of(const RunConfig& cfg) {
  return std::make_shared<const RadialGrid>(build_grid(cfg.R, cfg.N, cfg.grading));
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ParameterError("out", "cannot create directory " + dir);
}

template <class Fn>
void write_file(const fs::path& path, Fn fn) {
  std::ofstream out(path);
  if (!out) throw ParameterError("out", "cannot write " + path.string());
  fn(out);
}

Tolerances tolerances_of(const RunConfig& cfg) {
  Tolerances tol;
  tol.residual = cfg.solver.tol_residual;
  tol.seed = cfg.seed;
  return tol;
}

}  // namespace

void validate_run_config(const RunConfig& cfg) {
  if (cfg.command == "solve") {
    const ModelParams p = params_of(cfg);
    cfg.solver.validate(p.q);
    (void)build_grid(cfg.R, cfg.N, cfg.grading);
  } else if (cfg.command == "sweep") {
    if (cfg.sweep_param != "q" && cfg.sweep_param != "omega" && cfg.sweep_param != "kappa") {
      throw ParameterError("sweep-param", "expected q, omega or kappa");
    }
    if (cfg.sweep_values.empty()) throw ParameterError("sweep-values", "value list is empty");
    for (real v : cfg.sweep_values) {
      RunConfig point = cfg;
      if (cfg.sweep_param == "q") point.q = v;
      if (cfg.sweep_param == "omega") point.omega = v;
      if (cfg.sweep_param == "kappa") point.kappa = v;
      (void)params_of(point);
    }
    if (!cfg.solver.continuation_steps.empty()) {
      throw ParameterError("continuation-steps", "not supported for sweeps");
    }
    (void)build_grid(cfg.R, cfg.N, cfg.grading);
  } else if (cfg.command == "table") {
    for (real w : cfg.sweep_values) {
      if (!(w >= pi / 2 && w <= pi)) throw ParameterError("sweep-values", "table needs pi/2 <= omega <= pi");
    }
  } else if (cfg.command == "verify") {
    if (cfg.input.empty()) throw ParameterError("verify", "missing profile path");
  } else {
    throw ParameterError("command", "unknown command '" + cfg.command + "'");
  }
}

int run_solve(const RunConfig& cfg, std::ostream& log) {
  const ModelParams p = params_of(cfg);
  auto grid = grid_of(cfg);
  ensure_dir(cfg.out);
  auto [s, rep] = continuation_solve(p, grid, cfg.solver);
  const ObservableReport obs = compute_observables(p, s);
  const VerifyReport ver = run_suite(p, s, tolerances_of(cfg));

  const fs::path dir(cfg.out);
  write_profile_csv((dir / "profile.csv").string(), p, s);
  write_file(dir / "observables.txt", [&](std::ostream& o) { write_observables(o, p, obs, &rep); });
  write_file(dir / "verify.txt", [&](std::ostream& o) { write_report(o, ver); });

  log << "converged=" << (rep.converged ? "true" : "false") << " path=" << to_string(rep.path)
      << " residual=" << static_cast<double>(rep.final_residual_norm)
      << " Qe=" << static_cast<double>(obs.Qe) << " QS=" << static_cast<double>(obs.QS_numeric)
      << " E=" << static_cast<double>(obs.action.E) << " verify=" << (ver.overall ? "pass" : "fail") << '\n';
  if (!rep.converged) {
    log << "error: " << rep.message << '\n';
    return kExitNoConvergence;
  }
  if (!ver.overall) {
    for (const Check& c : ver.checks) {
      if (!c.ok()) log << "verify failed: " << c.id << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    }
    return kExitVerify;
  }
  return kExitOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& log) {
  auto grid = grid_of(cfg);
  ensure_dir(cfg.out);
  std::vector<SummaryRow> rows;
  bool all = true;
  FieldProfile previous;
  bool have_previous = false;
  for (real v : cfg.sweep_values) {
    RunConfig point = cfg;
    if (cfg.sweep_param == "q") point.q = v;
    if (cfg.sweep_param == "omega") point.omega = v;
    if (cfg.sweep_param == "kappa") point.kappa = v;
    const ModelParams p = params_of(point);

    // Warm start from the previous point, continuation from q = 0 otherwise.
    std::pair<FieldProfile, SolveReport> result;
    bool done = false;
    if (have_previous) {
      FieldProfile guess = previous;
      guess.g = solve_inner_g(p, *grid, guess.a, guess.far_field);
      result = newton_solve(p, guess, point.solver);
      done = result.second.converged;
    }
    if (!done) result = continuation_solve(p, grid, point.solver);
    const auto& [s, rep] = result;

    const ObservableReport obs = compute_observables(p, s);
    rows.push_back({p.omega, p.q, p.kappa, obs.Qe, obs.QS_numeric, obs.QS_closed, obs.gamma_fit,
                    obs.gamma_theory, obs.action.E, obs.action.L, rep.converged});
    log << "point " << cfg.sweep_param << '=' << static_cast<double>(v)
        << " converged=" << (rep.converged ? "true" : "false") << " Qe=" << static_cast<double>(obs.Qe) << '\n';
    all = all && rep.converged;
    if (rep.converged) {
      previous = s;
      have_previous = true;
    }
  }
  write_file(fs::path(cfg.out) / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, rows); });
  return all ? kExitOk : kExitNoConvergence;
}

int run_table(const RunConfig& cfg, std::ostream& log) {
  std::vector<real> omegas = cfg.sweep_values;
  if (omegas.empty()) {
    constexpr int kPoints = 51;
    for (int k = 0; k < kPoints; ++k) omegas.push_back(pi / 2 + (pi / 2) * k / (kPoints - 1));
  }
  ensure_dir(cfg.out);
  std::vector<std::pair<real, real>> qmax, qs, gamma0;
  const fs::path dir(cfg.out);
  write_file(dir / "table.txt", [&](std::ostream& o) {
    o << "# omega q_max QS gamma_q0\n";
    for (real w : omegas) {
      const real qm = admissible_q_max(w);
      const real Q = skyrme_charge_closed(w);
      const real g0 = std::sin(w) / 2;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%.17Lg %.17Lg %.17Lg %.17Lg\n", w, qm, Q, g0);
      o << buf;
      qmax.emplace_back(w, qm);
      qs.emplace_back(w, Q);
      gamma0.emplace_back(w, g0);
    }
  });
  write_series((dir / "q_max.dat").string(), qmax);
  write_series((dir / "skyrme_charge.dat").string(), qs);
  write_series((dir / "gamma_q0.dat").string(), gamma0);
  log << "wrote " << omegas.size() << " rows to " << (dir / "table.txt").string() << '\n';
  return kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& log) {
  const LoadedProfile in = read_profile_csv(cfg.input);
  const ModelParams p = validate_params(in.omega, in.q, in.kappa);
  check_profile(p, in.profile);
  Tolerances tol = tolerances_of(cfg);
  const VerifyReport ver = run_suite(p, in.profile, tol);
  ensure_dir(cfg.out);
  write_file(fs::path(cfg.out) / "verify.txt", [&](std::ostream& o) { write_report(o, ver); });
  write_report(log, ver);
  return ver.overall ? kExitOk : kExitVerify;
}

int run(const RunConfig& cfg, std::ostream& log) {
  try {
    validate_run_config(cfg);
    if (cfg.command == "solve") return run_solve(cfg, log);
    if (cfg.command == "sweep") return run_sweep(cfg, log);
    if (cfg.command == "table") return run_table(cfg, log);
    return run_verify(cfg, log);
  } catch (const RegionError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericError& e) {
    log << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  }
}

}  // namespace skydyon
