// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hetero/dirichlet.hpp"
#include "hetero/error.hpp"
#include "oracles.hpp"

using namespace hetero;

namespace {

DrProblem staircase() {
  return DrProblem{0.0, 1.0, 0.25, [](double) { return 0.0; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
}

DrProblem::Fn affine(double c0, double c1) {
  return [c0, c1](double x) { return c0 + c1 * x; };
}

DrProblem::Fn cubic(double c0, double c1, double c2, double c3) {
  return [=](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
}

bool near_lattice(double x, double base, double r, double tol) {
  const double t = (x - base) / r;
  return std::abs(t - std::round(t)) * r < tol;
}

}  // namespace

TEST(Dirichlet, LatticeCounters) {
  EXPECT_EQ(kunder(0.3, 0.0, 1.0, 0.25), 2);
  EXPECT_EQ(kbar(0.3, 0.0, 1.0, 0.25), 3);
  EXPECT_EQ(kunder(0.5, 0.0, 1.0, 0.25), 2);
  EXPECT_EQ(kbar(0.5, 0.0, 1.0, 0.25), 2);
  EXPECT_THROW(kbar(0.0, 0.0, 1.0, 0.25), DomainError);
  EXPECT_THROW(kunder(1.2, 0.0, 1.0, 0.25), DomainError);
}

TEST(Dirichlet, ShiftIdentities) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int checked = 0;
  while (checked < 10000) {
    const double a = -5 + 10 * u01(rng);
    const double b = a + 0.5 + 5 * u01(rng);
    const double r = 0.05 + 0.9 * u01(rng);
    const double x = a + (b - a) * u01(rng);
    if (!(x > a && x + r < b)) continue;
    ASSERT_EQ(kbar(x + r, a, b, r), kbar(x, a, b, r) - 1) << x << " " << a << " " << b << " " << r;
    ASSERT_EQ(kunder(x + r, a, b, r), kunder(x, a, b, r) + 1) << x << " " << a << " " << b << " " << r;
    ++checked;
  }
}

TEST(Dirichlet, OperatorExamples) {
  EXPECT_NEAR(dr_apply([](double x) { return x; }, 0.7, 0.3), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(dr_apply([](double x) { return x * x; }, 0.0, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(dr_apply([](double x) { return x < 0 ? -1.0 : 1.0; }, 0.25, 0.5), -8.0);
  const auto s = SampledFunction::sample([](double x) { return x * x; }, -1.0, 1.0, 1.0 / 64.0);
  EXPECT_DOUBLE_EQ(dr_apply(s, 0.0, 0.5), 2.0);
  EXPECT_THROW(dr_apply(s, 0.75, 0.5), DomainError);
}

TEST(Dirichlet, BoundaryBranches) {
  DrProblem p{0.0, 1.0, 0.25, affine(3.0, 1.0), affine(-2.0, 0.0), affine(0.0, 0.0)};
  EXPECT_EQ(solve_dr_explicit(p, -0.125), p.alpha(-0.125));
  EXPECT_EQ(solve_dr_explicit(p, 1.2), -2.0);
  EXPECT_THROW(solve_dr_explicit(p, 1.3), DomainError);
  EXPECT_THROW(solve_dr_explicit(p, -0.3), DomainError);
  DrProblem bad = p;
  bad.b = -1.0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = p;
  bad.f = nullptr;
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Dirichlet, MatchesDenseStencilOracle) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int inst = 0; inst < 10; ++inst) {
    const double a = -1 + u01(rng);
    const int n = 2 + inst;
    const double r = 0.1 + 0.3 * u01(rng);
    const double b = a + n * r;
    const auto f = cubic(u01(rng) - 0.5, u01(rng) - 0.5, u01(rng), -u01(rng));
    const DrProblem p{a, b, r, affine(u01(rng), u01(rng)), affine(u01(rng), -u01(rng)), f};
    const double theta = 0.1 + 0.8 * u01(rng);
    const double x0 = a + theta * r;
    const auto ref = oracle::stencil_chain(x0, r, static_cast<std::size_t>(n), p.alpha(x0 - r),
                                           p.beta(x0 + n * r), f);
    for (int j = 0; j < n; ++j) EXPECT_NEAR(solve_dr_explicit(p, x0 + j * r), ref[j], 1e-10) << inst << " " << j;
  }
}

TEST(Dirichlet, ConstantSourceSymmetricInterval) {
  const DrProblem p{-1.0, 1.0, 0.25, affine(0, 0), affine(0, 0), affine(1.5, 0)};
  const double x0 = -1.0 + 0.125;
  const auto ref = oracle::stencil_chain(x0, 0.25, 8, 0.0, 0.0, p.f);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(solve_dr_explicit(p, x0 + j * 0.25), ref[j], 1e-10);
  EXPECT_NEAR(solve_dr_explicit(p, -0.125), solve_dr_explicit(p, 0.125), 1e-12);
}

TEST(Dirichlet, DiscontinuousExample) {
  const auto p = staircase();
  EXPECT_NEAR(solve_dr_explicit(p, 0.3), 0.4, 1e-12);
  const auto sol = solve_dr_on_grid(p, 1e-3);
  ASSERT_EQ(sol.jump_points.size(), 3u);
  const double expected[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(sol.jump_points[i], expected[i], 1e-3);
    EXPECT_NEAR(sol.jump_sizes[i], 0.2, 1e-12);
  }
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(sol.eval(0.125 + 0.25 * k), (k + 1) / 5.0, 1e-12);
  EXPECT_LE(residual_check(p, 1000), 1e-13);
}

TEST(Dirichlet, ZeroDataGivesZero) {
  const DrProblem p{0.0, 1.3, 0.4, affine(0, 0), affine(0, 0), affine(0, 0)};
  const auto sol = solve_dr_on_grid(p, 1e-3);
  for (double v : sol.samples.values()) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(sol.jump_points.empty());
}

TEST(Dirichlet, JumpsOnlyOnSingularSet) {
  const DrProblem p{0.0, 1.0, 0.3, affine(0.2, 1.0), affine(1.0, -0.5), cubic(1, 0, -2, 0)};
  const double h = 1e-3;
  const auto sol = solve_dr_on_grid(p, h);
  EXPECT_FALSE(sol.jump_points.empty());
  for (double x : sol.jump_points) {
    EXPECT_TRUE(near_lattice(x, p.a, p.r, h) || near_lattice(x, p.b, p.r, h)) << x;
  }
}

TEST(Dirichlet, ResidualOnRandomData) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int inst = 0; inst < 10; ++inst) {
    const double a = -2 + 2 * u01(rng);
    const double b = a + 0.3 + 2 * u01(rng);
    const double r = 0.05 + 0.5 * u01(rng);
    const DrProblem p{a, b, r, affine(u01(rng), u01(rng)), affine(u01(rng), u01(rng)),
                      cubic(u01(rng), u01(rng), -u01(rng), u01(rng))};
    EXPECT_LE(residual_check(p, 1000), 1e-9) << inst;
  }
}

TEST(Dirichlet, ResidualDetectsCorruption) {
  const auto p = staircase();
  const double bump = 1e-3;
  const double r = p.r;
  // A bump on a short interval inside one plateau.
  const std::function<double(double)> bad = [&](double x) {
    return solve_dr_explicit(p, x) + ((x > 0.30 && x < 0.32) ? bump : 0.0);
  };
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double x = 0.001 * i;
    if (near_lattice(x, 0.0, r, 1e-9) || x - r < -r || x + r > 1.0 + r) continue;
    worst = std::max(worst, std::abs(dr_apply(bad, x, r) - p.f(x)));
  }
  EXPECT_GE(worst, bump / (r * r) - 1e-12);
}

TEST(Dirichlet, MaximumPrinciple) {
  const DrProblem minus_one{0.0, 1.0, 0.3, affine(-1, 0), affine(-1, 0), affine(0, 0)};
  const auto rep = max_principle_check(minus_one, 500);
  EXPECT_TRUE(rep.passed);
  EXPECT_NEAR(rep.sup, -1.0, 1e-12);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int inst = 0; inst < 50; ++inst) {
    const double a = -1 + u01(rng);
    const double b = a + 0.2 + 2 * u01(rng);
    const double r = 0.05 + 0.6 * u01(rng);
    const DrProblem p{a, b, r, [a](double x) { return -(x - a) * (x - a); }, [b](double x) { return -(x - b) * (x - b); },
                      affine(1, 0)};
    EXPECT_TRUE(max_principle_check(p, 400).passed) << inst;
  }
}

TEST(Dirichlet, MaximumPrinciplePrecondition) {
  const DrProblem p{0.0, 1.0, 0.25, affine(0.1, 0), affine(0, 0), affine(0, 0)};
  try {
    max_principle_check(p, 100);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
  const DrProblem neg_f{0.0, 1.0, 0.25, affine(0, 0), affine(0, 0), affine(-1, 0)};
  EXPECT_THROW(max_principle_check(neg_f, 100), PreconditionError);
}

TEST(Dirichlet, ComparisonPrinciple) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int inst = 0; inst < 20; ++inst) {
    const double a = u01(rng);
    const double b = a + 0.3 + u01(rng);
    const double r = 0.05 + 0.4 * u01(rng);
    const double c0 = u01(rng), c1 = u01(rng), d0 = u01(rng), f0 = u01(rng);
    const DrProblem lo{a, b, r, affine(c0, c1), affine(d0, 0), affine(f0 + 0.5, 0)};
    const DrProblem hi{a, b, r, affine(c0 + 0.1, c1), affine(d0 + u01(rng), 0), affine(f0, -0.1)};
    for (int i = 0; i <= 400; ++i) {
      const double x = a - r + (b - a + 2 * r) * i / 400.0;
      EXPECT_LE(solve_dr_explicit(lo, x), solve_dr_explicit(hi, x) + 1e-12);
    }
  }
}

TEST(Dirichlet, RegularityOfDiscontinuousExample) {
  const auto rep = regularity_bounds(staircase());
  EXPECT_NEAR(rep.linf_bound, 1.0, 1e-12);
  EXPECT_NEAR(rep.measured_sup, 1.0, 1e-12);
  EXPECT_TRUE(rep.linf_ok);
  EXPECT_TRUE(rep.f_is_zero);
  EXPECT_NEAR(rep.jump_bound, 0.25, 1e-12);
  EXPECT_NEAR(rep.measured_max_jump, 0.2, 1e-9);
  ASSERT_TRUE(rep.jump_ok.has_value());
  EXPECT_TRUE(*rep.jump_ok);
}

TEST(Dirichlet, RegularityOfEqualConstantData) {
  const DrProblem p{0.0, 1.0, 0.3, affine(0.7, 0), affine(0.7, 0), affine(0, 0)};
  const auto rep = regularity_bounds(p);
  EXPECT_NEAR(rep.measured_max_jump, 0.0, 1e-12);
  EXPECT_GE(rep.jump_bound, 0.0);
  EXPECT_TRUE(*rep.jump_ok);
}

TEST(Dirichlet, JumpBoundMissesBetaOscillation) {
  // Constant alpha, sloped beta: jumps at b - rN carry the oscillation of beta.
  const DrProblem p{0.0, 1.0, 0.3, affine(0, 0), affine(-1, 1), affine(0, 0)};
  const auto rep = regularity_bounds(p);
  EXPECT_NEAR(rep.measured_max_jump, 0.18, 1e-6);
  EXPECT_NEAR(rep.jump_bound, 0.09, 1e-9);
  EXPECT_FALSE(*rep.jump_ok);
  EXPECT_LE(rep.measured_max_jump, rep.jump_bound_with_beta);
}

TEST(Dirichlet, JumpBoundNotAssertedWithSource) {
  const DrProblem p{0.0, 1.0, 0.3, affine(0, 0), affine(0, 0), affine(1, 0)};
  const auto rep = regularity_bounds(p);
  EXPECT_FALSE(rep.f_is_zero);
  EXPECT_FALSE(rep.jump_ok.has_value());
  EXPECT_GT(rep.f_term_coefficient, 0.0);
  EXPECT_TRUE(rep.linf_ok);
}
