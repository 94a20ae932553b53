#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "lpsld/errors.hpp"
#include "lpsld/prefactor.hpp"
#include "lpsld/sampling.hpp"

using namespace lpsld;

TEST(ConstantsTest, XiIsQuadraticForm) {
    const DualPoint dp = solve_dual(0.5, PExponent(3.0));
    const PrefactorBundle b = constants(dp);
    const auto& H = dp.hessian;
    const auto& l = dp.lambda;
    const double q = H(0, 0) * l(0) * l(0) + 2 * H(0, 1) * l(0) * l(1) + H(1, 1) * l(1) * l(1);
    EXPECT_NEAR(b.xi * b.xi, q, 1e-14 * q);
    EXPECT_EQ(b.rate, dp.rate);
}

TEST(ConstantsTest, BoundaryCurvatureAtP2) {
    // L2 = p (p - 1) a / (a^2 + p^2)^{3/2}, at p = 2, a = 1: 2 / 5^{3/2}
    DualPoint dp = solve_dual(0.5, PExponent(2.0));
    dp.a = 1.0;
    EXPECT_NEAR(constants(dp).L2, 2.0 / std::pow(5.0, 1.5), 1e-15);
    EXPECT_NEAR(2.0 / std::pow(5.0, 1.5), 0.178885, 1e-6);
}

TEST(ConstantsTest, KappaPositiveOnGrid) {
    for (double p : {1.5, 2.0, 3.0}) {
        for (double a = 0.1; a < 0.85; a += 0.1) {
            const DualPoint dp = solve_dual(a, PExponent(p));
            const PrefactorBundle b = constants(dp);
            EXPECT_GT(b.L1, 0.0);
            EXPECT_GT(b.kappa_sq_laplace, 0.0) << p << " " << a;
            EXPECT_LT(b.kappa_sq_laplace, 1.0);
            EXPECT_NEAR(b.kappa * b.kappa, b.kappa_sq_laplace, 1e-14);
            EXPECT_NEAR(b.kappa_sq_printed, 1.0 - b.L1 / b.L2, 1e-12 * std::abs(b.kappa_sq_printed));
        }
    }
}

TEST(ConstantsTest, PrintedFormIsNotPositiveHere) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    EXPECT_THROW((void)constants(dp, KappaForm::Printed), DegenerateCurvature);
    EXPECT_THROW((void)constants(solve_dual(0.0, PExponent(3.0))), DomainError);
}

TEST(ConstantsTest, BaselineDecreasesInN) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const PrefactorBundle b = constants(dp);
    double prev = INFINITY;
    for (int n : {1, 5, 20, 80, 200}) {
        const double lb = b.log_baseline(n);
        EXPECT_NEAR(lb, -n * b.rate - std::log(b.kappa * b.xi * std::sqrt(2 * std::numbers::pi * n)), 1e-12);
        EXPECT_LT(lb, prev);
        prev = lb;
    }
}

TEST(DirectionTest, GaussianCorrectionsVanish) {
    const DualPoint dp = solve_dual(0.5, PExponent(2.0));
    for (int n : {10, 100}) {
        for (std::uint64_t s = 1; s <= 5; ++s) {
            const Direction d = direction_for(n, s);
            const DirectionCorrections dc = direction_corrections(dp, d.theta);
            EXPECT_NEAR(dc.R, 0.0, 1e-9);
            EXPECT_NEAR(dc.c.norm(), 0.0, 1e-9);
            EXPECT_NEAR(dc.C, 1.0, 1e-9);
        }
    }
}

TEST(DirectionTest, SingleCoordinate) {
    const PExponent p(3.0);
    const DualPoint dp = solve_dual(0.4, p);
    const std::vector<double> one{1.0};
    const DirectionCorrections dc = direction_corrections(dp, one);
    EXPECT_NEAR(dc.psi_n, lambda_p_value(dp.lambda(0), dp.lambda(1), p), 1e-14);
    EXPECT_NEAR(dc.R, dc.psi_n - psi(dp.lambda, p).value, 1e-12);
}

TEST(DirectionTest, CAtLeastOneAndRejectsNonUnit) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const DirectionCorrections dc = direction_corrections(dp, direction_for(20, s).theta);
        EXPECT_GE(dc.C, 1.0);
        EXPECT_GE(dc.log_C, 0.0);
        const Eigen::Vector2d hc = dp.hessian.llt().matrixL().solve(dc.c);
        EXPECT_NEAR(dc.log_C, hc.squaredNorm(), 1e-12 * (1 + dc.log_C));
    }
    const std::vector<double> bad{1.0, 1.0};
    EXPECT_THROW((void)direction_corrections(dp, bad), DomainError);
}

TEST(DirectionTest, SldComposition) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const PrefactorBundle b = constants(dp);
    const DirectionCorrections dc = direction_corrections(dp, direction_for(80, 1).theta);
    const SldEstimate e = sld_estimate(dp, b, dc, 80);
    EXPECT_NEAR(e.log_value, b.log_baseline(80) + std::sqrt(80.0) * dc.R + dc.log_C, 1e-10);
    EXPECT_DOUBLE_EQ(e.value, std::exp(e.log_value));
}

TEST(ExtremizerTest, Orderings) {
    for (int n : {10, 100}) {
        for (double a : {0.3, 0.7}) {
            EXPECT_EQ(extremizer_diagnostic(solve_dual(a, PExponent(3.0)), n).ordering, Ordering::Greater);
            EXPECT_EQ(extremizer_diagnostic(solve_dual(a, PExponent(2.0)), n).ordering, Ordering::Equal);
            EXPECT_EQ(extremizer_diagnostic(solve_dual(a, PExponent(1.5)), n).ordering, Ordering::Less);
        }
    }
    EXPECT_STREQ(to_string(Ordering::Greater), "GREATER");
    EXPECT_THROW((void)extremizer_diagnostic(solve_dual(0.3, PExponent(3.0)), 1), DomainError);
}
