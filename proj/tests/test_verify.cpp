#include <gtest/gtest.h>

#include <sstream>

#include "skydyon/errors.hpp"
#include "skydyon/verify.hpp"
#include "support.hpp"

using namespace skydyon;
using skydyon::testing::shared_grid;

namespace {

struct Solved {
  ModelParams p;
  FieldProfile s;
};

const Solved& dyon() {
  static const Solved solved = [] {
    const ModelParams p = validate_params(0.75L * pi, 0.3L, 1);
    auto [s, rep] = continuation_solve(p, shared_grid(60, 2000), SolveConfig{});
    return Solved{p, s};
  }();
  return solved;
}

}  // namespace

TEST(VerifySuite, ConvergedDyonPasses) {
  const VerifyReport r = run_suite(dyon().p, dyon().s);
  for (const Check& c : r.checks) EXPECT_TRUE(c.ok()) << c.id << " " << c.detail;
  EXPECT_TRUE(r.overall);
  for (const char* id : {"residual_a", "boundary_origin", "bounds_g", "monotone_a", "energy_E1", "coercive_bound",
                         "constraint_orthogonality", "charge_consistency", "decay_consistency", "tail_g", "tail_f",
                         "small_r_a", "small_r_f", "flux_identity"}) {
    EXPECT_NE(r.find(id), nullptr) << id;
  }
  for (const Check& c : r.checks) EXPECT_FALSE(c.anchor.empty());
}

TEST(VerifySuite, InitialGuessFailsResidualsOnly) {
  const ModelParams& p = dyon().p;
  // Short domain: on long ones the closed-form f saturates and is no longer strict.
  const FieldProfile guess = initial_guess(p, std::make_shared<const RadialGrid>(build_grid(20, 400)));
  const VerifyReport r = run_suite(p, guess);
  EXPECT_FALSE(r.overall);
  EXPECT_FALSE(r.find("residual_a")->ok());
  for (const char* id : {"bounds_a", "bounds_f", "bounds_g", "monotone_a", "monotone_f", "monotone_g"}) {
    EXPECT_TRUE(r.find(id)->ok()) << id;
  }
}

TEST(VerifySuite, InjectedFaultIsLocated) {
  FieldProfile s = dyon().s;
  s.g[700] = -s.g[700];
  const VerifyReport r = run_suite(dyon().p, s);
  EXPECT_FALSE(r.overall);
  for (const char* id : {"bounds_g", "monotone_g"}) {
    const Check* c = r.find(id);
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->ok());
    EXPECT_NE(c->detail.find("node 700"), std::string::npos) << c->detail;
  }
}

TEST(VerifySuite, ReportIsDeterministic) {
  std::ostringstream a, b;
  write_report(a, run_suite(dyon().p, dyon().s));
  write_report(b, run_suite(dyon().p, dyon().s));
  EXPECT_EQ(a.str(), b.str());
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  std::istringstream fields(line);
  std::string id, status, measured, threshold, anchor;
  fields >> id >> status >> measured >> threshold >> anchor;
  EXPECT_EQ(id, "residual_a");
  EXPECT_EQ(status, "pass");
  EXPECT_EQ(anchor, "field-equations");
  EXPECT_NE(a.str().find("overall pass"), std::string::npos);
}

TEST(VerifySuite, TestFunctionsVanishAtOuterNode) {
  auto grid = shared_grid(60, 400);
  const auto G = constraint_test_functions(*grid, 5, 42);
  ASSERT_EQ(G.size(), 5u);
  for (const Array& g : G) EXPECT_EQ(g.back(), 0);
  EXPECT_EQ(G[2], constraint_test_functions(*grid, 5, 42)[2]);
  EXPECT_NE(G[0], constraint_test_functions(*grid, 5, 43)[0]);
}

TEST(VerifySuite, SigmaModelLimitSkipsSkyrmeBound) {
  const ModelParams p = validate_params(0.75L * pi, 0.1L, 0);
  auto [s, rep] = continuation_solve(p, shared_grid(60, 2000), SolveConfig{});
  ASSERT_TRUE(rep.converged);
  const VerifyReport r = run_suite(p, s);
  EXPECT_TRUE(r.overall);
  EXPECT_EQ(r.find("small_r_f")->status, CheckStatus::skip);
}

TEST(Refinement, RequiresTwoLevels) {
  EXPECT_THROW(refinement_study(dyon().p, 60, 500, Grading{}, SolveConfig{}, 1), ParameterError);
}

TEST(Refinement, TwoLevelsGiveNoOrder) {
  const ModelParams p = validate_params(0.75L * pi, 0.1L, 1);
  const RefinementReport r = refinement_study(p, 30, 300, Grading{}, SolveConfig{}, 2);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.levels.size(), 2u);
  EXPECT_TRUE(std::isnan(r.order_E));
  EXPECT_EQ(r.extended_domain.N, 900u);
}
