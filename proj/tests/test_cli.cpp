#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "skydyon/cli_runner.hpp"
#include "skydyon/errors.hpp"
#include "skydyon/observables.hpp"
#include "skydyon/profile_io.hpp"

using namespace skydyon;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("skydyon_test_" + name);
  fs::remove_all(dir);
  return dir;
}

RunConfig small(const std::string& command, const fs::path& out) {
  RunConfig cfg;
  cfg.command = command;
  cfg.R = 40;
  cfg.N = 400;
  cfg.out = out.string();
  return cfg;
}

std::vector<std::string> csv_rows(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) rows.push_back(line);
  return rows;
}

}  // namespace

TEST(CliParse, Angles) {
  EXPECT_NEAR(static_cast<double>(parse_angle("0.75pi")), 0.75 * M_PI, 1e-15);
  EXPECT_EQ(parse_angle("pi"), pi);
  EXPECT_NEAR(static_cast<double>(parse_angle("0.5*pi")), M_PI / 2, 1e-15);
  EXPECT_EQ(parse_angle("2.25"), 2.25L);
  EXPECT_THROW(parse_angle("abc"), ParameterError);
  EXPECT_THROW(parse_angle("0.7 5pi"), ParameterError);
  const std::vector<real> list = parse_list("0.55pi, 0.75pi,0.9pi", "sweep-values", true);
  ASSERT_EQ(list.size(), 3u);
  EXPECT_NEAR(static_cast<double>(list[2]), 0.9 * M_PI, 1e-15);
  EXPECT_THROW(parse_list("0.1,,0.2", "sweep-values", false), ParameterError);
}

TEST(ProfileCsv, RoundTripReproducesObservables) {
  const ModelParams p = validate_params(0.75L * pi, 0.3L, 1);
  auto grid = std::make_shared<const RadialGrid>(build_grid(40, 400));
  auto [s, rep] = continuation_solve(p, grid, SolveConfig{});
  ASSERT_TRUE(rep.converged);
  std::stringstream buf;
  write_profile_csv(buf, p, s);
  const std::string text = buf.str();
  for (const char* key : {"# omega=", "# q=", "# kappa=", "# R=", "# N=", "# grading=", "r,a,f,g"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  const LoadedProfile in = read_profile_csv(buf);
  const ModelParams q = validate_params(in.omega, in.q, in.kappa);
  EXPECT_EQ(q.omega, p.omega);
  EXPECT_EQ(in.profile.a, s.a);
  EXPECT_EQ(in.profile.g, s.g);
  const real Qe = electric_charge(p, s), E = rep.action.E;
  EXPECT_NEAR(static_cast<double>(electric_charge(q, in.profile) / Qe), 1.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(action_breakdown(q, in.profile).E / E), 1.0, 1e-12);
}

TEST(ProfileCsv, RejectsMalformedInput) {
  std::istringstream missing("# omega=2\n# q=0.1\nr,a,f,g\n");
  EXPECT_THROW(read_profile_csv(missing), ParameterError);
  std::istringstream header("# omega=2.3\n# q=0.1\n# kappa=1\n# R=10\n# N=100\n# grading=uniform\nx,y\n");
  EXPECT_THROW(read_profile_csv(header), ParameterError);
  std::istringstream rows("# omega=2.3\n# q=0.1\n# kappa=1\n# R=10\n# N=100\n# grading=uniform\nr,a,f,g\n0,1,0,0\n");
  EXPECT_THROW(read_profile_csv(rows), ParameterError);
}

TEST(CliRun, SolveWritesArtifactsAndVerifies) {
  const fs::path out = scratch("solve");
  RunConfig cfg = small("solve", out);
  std::ostringstream log;
  ASSERT_EQ(run(cfg, log), kExitOk) << log.str();
  for (const char* f : {"profile.csv", "observables.txt", "verify.txt"}) EXPECT_TRUE(fs::exists(out / f)) << f;
  EXPECT_EQ(csv_rows(out / "verify.txt").back(), "overall pass");

  RunConfig ver;
  ver.command = "verify";
  ver.input = (out / "profile.csv").string();
  ver.out = (out / "check").string();
  std::ostringstream vlog;
  EXPECT_EQ(run(ver, vlog), kExitOk) << vlog.str();
  std::ifstream a(out / "verify.txt"), b(out / "check" / "verify.txt");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(CliRun, ConfigErrors) {
  std::ostringstream log;
  RunConfig cfg = small("solve", scratch("bad"));
  cfg.omega = 0.4L * pi;
  cfg.q = 0.1L;
  EXPECT_EQ(run(cfg, log), kExitConfig);
  EXPECT_NE(log.str().find("omega"), std::string::npos);
  cfg = small("sweep", scratch("bad"));
  EXPECT_EQ(run(cfg, log), kExitConfig);
  cfg.sweep_values = {0.1L};
  cfg.sweep_param = "R";
  EXPECT_EQ(run(cfg, log), kExitConfig);
  cfg = small("solve", scratch("bad"));
  cfg.N = 50;
  EXPECT_EQ(run(cfg, log), kExitConfig);
  cfg.command = "plot";
  EXPECT_EQ(run(cfg, log), kExitConfig);
  RunConfig ver;
  ver.command = "verify";
  ver.input = "/nonexistent/profile.csv";
  EXPECT_EQ(run(ver, log), kExitConfig);
}

TEST(CliRun, UnderResolvedDomainDoesNotSucceed) {
  RunConfig cfg = small("solve", scratch("short"));
  cfg.R = 5;
  std::ostringstream log;
  const int code = run(cfg, log);
  EXPECT_TRUE(code == kExitNoConvergence || code == kExitVerify) << code;
}

TEST(CliRun, OmegaSweepCarriesClosedSkyrmeCharge) {
  const fs::path out = scratch("sweep");
  RunConfig cfg = small("sweep", out);
  cfg.q = 0.05L;
  cfg.sweep_param = "omega";
  cfg.sweep_values = {0.55L * pi, 0.75L * pi, 0.9L * pi};
  std::ostringstream log;
  ASSERT_EQ(run(cfg, log), kExitOk) << log.str();
  const auto rows = csv_rows(out / "summary.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "omega,q,kappa,Qe,QS_numeric,QS_closed,gamma_fit,gamma_theory,E,L,converged");
  for (std::size_t k = 1; k < rows.size(); ++k) {
    std::stringstream ss(rows[k]);
    std::vector<std::string> cells;
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    ASSERT_EQ(cells.size(), 11u);
    EXPECT_NEAR(std::stod(cells[5]), static_cast<double>(skyrme_charge_closed(cfg.sweep_values[k - 1])), 1e-15);
    EXPECT_EQ(cells[10], "true");
  }
}

TEST(CliRun, TableIsAnalytic) {
  const fs::path out = scratch("table");
  RunConfig cfg;
  cfg.command = "table";
  cfg.out = out.string();
  cfg.sweep_values = {pi / 2, 0.75L * pi, pi};
  std::ostringstream log;
  ASSERT_EQ(run(cfg, log), kExitOk);
  const auto rows = csv_rows(out / "table.txt");
  ASSERT_EQ(rows.size(), 4u);
  std::stringstream mid(rows[2]);
  double w, qm, qs, g0;
  mid >> w >> qm >> qs >> g0;
  EXPECT_NEAR(qm, 0.35355339059327376, 1e-12);
  EXPECT_NEAR(qs, 0.25 - 1 / (2 * M_PI), 1e-12);
  EXPECT_NEAR(g0, 0.35355339059327376, 1e-12);
  std::stringstream first(rows[1]), last(rows[3]);
  first >> w >> qm >> qs;
  EXPECT_NEAR(qs, 0.5, 1e-15);
  last >> w >> qm >> qs;
  EXPECT_NEAR(qs, 0.0, 1e-15);
  for (const char* f : {"q_max.dat", "skyrme_charge.dat", "gamma_q0.dat"}) {
    const auto series = csv_rows(out / f);
    ASSERT_EQ(series.size(), 3u) << f;
  }
  RunConfig defaults;
  defaults.command = "table";
  defaults.out = (out / "default").string();
  ASSERT_EQ(run(defaults, log), kExitOk);
  EXPECT_EQ(csv_rows(out / "default" / "table.txt").size(), 52u);
  defaults.sweep_values = {0.2L};
  EXPECT_EQ(run(defaults, log), kExitConfig);
}
