#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "skydyon/errors.hpp"
#include "skydyon/radial_grid.hpp"

using namespace skydyon;

namespace {

Array sampled(const RadialGrid& g, real (*fn)(real)) {
  Array u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = fn(g.r(i));
  return u;
}

}  // namespace

TEST(RadialGrid, UniformNodesAreEquallySpaced) {
  const RadialGrid g = build_grid(10, 100, Grading::uniform());
  ASSERT_EQ(g.size(), 101u);
  for (std::size_t i = 0; i <= 100; ++i) EXPECT_NEAR(static_cast<double>(g.r(i) - 0.1L * i), 0.0, 1e-16);
}

TEST(RadialGrid, EndpointsAndStrictIncrease) {
  for (real c : {0.0L, 0.5L, 0.95L, 0.99L}) {
    const RadialGrid g = build_grid(60, 2000, Grading{c});
    EXPECT_EQ(g.r(0), 0);
    EXPECT_EQ(g.r(g.N()), 60);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g.r(i), g.r(i - 1));
    EXPECT_LE(g.max_spacing_ratio(), RadialGrid::kMaxSpacingRatio);
  }
}

TEST(RadialGrid, DefaultGradingClustersAtCore) {
  const RadialGrid g = build_grid(60, 2000);
  const auto inside = std::count_if(g.nodes().begin(), g.nodes().end(), [](real r) { return r <= 1; });
  EXPECT_GE(static_cast<double>(inside) / g.size(), 0.10);
}

TEST(RadialGrid, RejectsBadInput) {
  auto field_of = [](auto&& fn) {
    try {
      fn();
    } catch (const ParameterError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of([] { build_grid(60, 50); }), "N");
  EXPECT_EQ(field_of([] { build_grid(-1, 200); }), "R");
  EXPECT_EQ(field_of([] { build_grid(60, 200, Grading{1.5L}); }), "cluster");
  // Strong clustering on a coarse mesh breaks the spacing-ratio bound.
  EXPECT_EQ(field_of([] { build_grid(60, 100, Grading{0.99L}); }), "cluster");
}

TEST(RadialGrid, GradingDescriptorRoundTrip) {
  for (const char* text : {"uniform", "quadratic:0.95", "quadratic:0.3"}) {
    EXPECT_EQ(Grading::parse(text).describe(), text);
  }
  EXPECT_TRUE(Grading::parse("default").is_default());
  EXPECT_EQ(Grading{}.describe(), "default");
  // Default grading resolves on the mesh, weaker on coarse ones.
  EXPECT_EQ(build_grid(60, 2000).grading().cluster, Grading::kDefaultCluster);
  const RadialGrid coarse = build_grid(60, 100);
  EXPECT_LT(coarse.grading().cluster, Grading::kDefaultCluster);
  EXPECT_LE(coarse.max_spacing_ratio(), RadialGrid::kMaxSpacingRatio);
  EXPECT_EQ(Grading::parse(coarse.grading().describe()).cluster, coarse.grading().cluster);
  EXPECT_THROW(Grading::parse("cubic"), ParameterError);
}

TEST(RadialGrid, FirstDerivativeExactOnQuadratics) {
  for (const Grading& gr : {Grading::uniform(), Grading{}}) {
    const RadialGrid g = build_grid(60, 400, gr);
    Array u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = 1.5L - 0.7L * g.r(i) + 0.3L * g.r(i) * g.r(i);
    for (std::size_t i = 1; i < g.N(); ++i) {
      EXPECT_NEAR(static_cast<double>(d1(g, u, i)), static_cast<double>(-0.7L + 0.6L * g.r(i)), 1e-11);
    }
  }
  const RadialGrid g = build_grid(10, 100, Grading::uniform());
  const Array sq = sampled(g, [](real r) { return r * r; });
  EXPECT_NEAR(static_cast<double>(d1(g, sq, 5)), static_cast<double>(2 * g.r(5)), 1e-15);
  const Array one(g.size(), 1);
  for (std::size_t i = 1; i < g.N(); ++i) EXPECT_EQ(d1(g, one, i), 0);
}

TEST(RadialGrid, StencilIndexChecks) {
  const RadialGrid g = build_grid(10, 100);
  const Array u(g.size(), 0);
  EXPECT_THROW(d1(g, u, 0), std::out_of_range);
  EXPECT_THROW(d1(g, u, 100), std::out_of_range);
  EXPECT_THROW(sturm_liouville(g, u, 0), std::out_of_range);
  EXPECT_THROW(second_difference(g, u, 100), std::out_of_range);
}

TEST(RadialGrid, SturmLiouvilleExactSet) {
  const RadialGrid g = build_grid(60, 500);
  const Array one(g.size(), 1);
  const Array lin = sampled(g, [](real r) { return r; });
  Array inv(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) inv[i] = g.r(i) > 0 ? 1 / g.r(i) : 0;
  for (std::size_t i = 1; i < g.N(); ++i) {
    EXPECT_EQ(sturm_liouville(g, one, i), 0);
    EXPECT_NEAR(static_cast<double>(sturm_liouville(g, lin, i) / (2 * g.r(i))), 1.0, 1e-15);
    // (r^2 (1/r)')' = 0; the half-node coefficient makes this exact away from r_0.
    if (i >= 2) EXPECT_NEAR(static_cast<double>(sturm_liouville(g, inv, i) * g.r(i) * g.r(i)), 0.0, 1e-12);
  }
}

TEST(RadialGrid, SturmLiouvilleSecondOrderOnSmoothFunction) {
  // u = sin r: (r^2 u')' = 2 r cos r - r^2 sin r.
  real previous = 0;
  for (std::size_t N : {200u, 400u, 800u}) {
    const RadialGrid g = build_grid(10, N, Grading{0.5L});
    const Array u = sampled(g, [](real r) { return std::sin(r); });
    real err = 0;
    for (std::size_t i = 1; i < g.N(); ++i) {
      const real r = g.r(i);
      err = std::max(err, std::fabs(sturm_liouville(g, u, i) - (2 * r * std::cos(r) - r * r * std::sin(r))));
    }
    if (previous > 0) {
      EXPECT_GT(previous / err, 3.5);
      EXPECT_LT(previous / err, 4.5);
    }
    previous = err;
  }
}

TEST(RadialGrid, SturmLiouvilleTelescopes) {
  const RadialGrid g = build_grid(60, 300);
  const Array u = sampled(g, [](real r) { return std::exp(-r / 7) * std::cos(r); });
  real sum = 0;
  for (std::size_t i = 1; i < g.N(); ++i) sum += sturm_liouville(g, u, i) * g.weight(i);
  const real boundary = half_node_flux(g, u, g.N() - 1) - half_node_flux(g, u, 0);
  EXPECT_NEAR(static_cast<double>(sum), static_cast<double>(boundary), 1e-14);
}

TEST(RadialGrid, SecondDifferenceExactOnQuadraticsOnUniformMesh) {
  const RadialGrid g = build_grid(10, 100, Grading::uniform());
  const Array u = sampled(g, [](real r) { return 3 * r * r - r; });
  for (std::size_t i = 1; i < g.N(); ++i) EXPECT_NEAR(static_cast<double>(second_difference(g, u, i)), 6.0, 1e-10);
}

TEST(RadialGrid, Quadrature) {
  const RadialGrid g10 = build_grid(10, 100, Grading::uniform());
  EXPECT_NEAR(static_cast<double>(integrate(g10, Array(g10.size(), 1))), 10.0, 1e-15);
  EXPECT_NEAR(static_cast<double>(integrate(g10, sampled(g10, [](real r) { return r; }))), 50.0, 1e-13);
  const RadialGrid g1 = build_grid(1, 1000, Grading::uniform());
  EXPECT_NEAR(static_cast<double>(integrate(g1, sampled(g1, [](real r) { return r * r; }))), 1.0 / 3, 1e-5);
  // Exact for piecewise-linear integrands on graded meshes too.
  const RadialGrid gg = build_grid(60, 500);
  EXPECT_NEAR(static_cast<double>(integrate(gg, sampled(gg, [](real r) { return 2 - r; }))), 120.0 - 1800.0, 1e-10);
}

TEST(RadialGrid, QuadratureSecondOrderUnderRefinement) {
  RadialGrid g = build_grid(8, 100);
  const real exact = 1 - std::cos(8.0L);
  real previous = 0;
  for (int level = 0; level < 3; ++level) {
    const real err = std::fabs(integrate(g, sampled(g, [](real r) { return std::sin(r); })) - exact);
    if (previous > 0) EXPECT_GT(previous / err, 3.5);
    previous = err;
    g = refine(g);
  }
}

TEST(RadialGrid, QuadratureRejectsNonFinite) {
  const RadialGrid g = build_grid(10, 100);
  Array w(g.size(), 1);
  w[17] = NAN;
  try {
    integrate(g, w);
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_EQ(e.node(), 17u);
  }
}

TEST(RadialGrid, RefinementNestsParentNodes) {
  const RadialGrid g = build_grid(10, 100, Grading::uniform());
  const RadialGrid r1 = refine(g);
  const RadialGrid r2 = refine(r1);
  EXPECT_EQ(r1.N(), 200u);
  EXPECT_EQ(r2.N(), 400u);
  EXPECT_EQ(r1.R(), 10);
  EXPECT_TRUE(r1.grading().is_uniform());
  const RadialGrid graded = build_grid(60, 300);
  const RadialGrid child = refine(graded);
  for (std::size_t i = 0; i <= graded.N(); ++i) EXPECT_EQ(child.r(2 * i), graded.r(i));
}
