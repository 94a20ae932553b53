#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "lpsld/clt.hpp"
#include "lpsld/errors.hpp"

using namespace lpsld;

TEST(TiltedFunctionsTest, DerivativesMatchFiniteDifferences) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const double h = 1e-5;
    for (double x : {-2.0, -0.3, 0.5, 1.7}) {
        const TiltedFunctions f = tilted_functions(dp, x);
        const TiltedFunctions up = tilted_functions(dp, x + h);
        const TiltedFunctions dn = tilted_functions(dp, x - h);
        EXPECT_NEAR(f.dl, (up.l - dn.l) / (2 * h), 1e-6 * (1 + std::abs(f.dl)));
        EXPECT_NEAR(f.d2l, (up.dl - dn.dl) / (2 * h), 1e-6 * (1 + std::abs(f.d2l)));
        EXPECT_NEAR(f.dl1, (up.l1 - dn.l1) / (2 * h), 1e-6 * (1 + std::abs(f.dl1)));
        EXPECT_NEAR(f.dl2, (up.l2 - dn.l2) / (2 * h), 1e-6 * (1 + std::abs(f.dl2)));
    }
}

TEST(SigmaTest, SquareEntryAndSymmetry) {
    for (double p : {1.5, 3.0}) {
        const DualPoint dp = solve_dual(0.5, PExponent(p));
        const CltCovariance c = sigma_a(dp);
        EXPECT_NEAR(c.sigma(1, 1), 2.0, 1e-12);
        EXPECT_NEAR(c.mean(1), 1.0, 1e-13);
        EXPECT_TRUE(c.sigma.isApprox(c.sigma.transpose(), 0.0));
        EXPECT_GT(c.limit_var_r(), 0.0);
        // E l2(Z) = d2 Psi(lambda) = 1 and E l1(Z) = a at the dual point
        EXPECT_NEAR(c.mean(3), 1.0, 1e-8);
        EXPECT_NEAR(c.mean(2), 0.5, 1e-8);
    }
}

TEST(SigmaTest, ZeroTiltDegenerates) {
    const DualPoint dp = solve_dual(0.0, PExponent(3.0));
    const CltCovariance c = sigma_a(dp);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != 1 || j != 1) {
                EXPECT_NEAR(c.sigma(i, j), 0.0, 1e-12) << i << j;
            }
        }
    }
    EXPECT_NEAR(c.limit.e_dl_z, 0.0, 1e-14);
    EXPECT_NEAR(c.limit.e_d2l_z2, 0.0, 1e-14);

    const LimitSampler ls(c, dp);
    EXPECT_FALSE(ls.used_cholesky());
    CounterRng rng(1, 0);
    for (int i = 0; i < 20; ++i) {
        const LimitDraw d = ls.draw(rng);
        EXPECT_NEAR(d.R, 0.0, 1e-6);
        EXPECT_NEAR(d.M, 1.0, 1e-6);
    }
}

TEST(FluctTest, GaussianQuadraticTerm) {
    // p = 2: l'' = lambda1^2 / (1 - 2 lambda2) is constant, so
    // s_n = l'' (sqrt(n) - ||z||)^2 / 2
    const DualPoint dp = solve_dual(0.5, PExponent(2.0));
    const CltCovariance c = sigma_a(dp);
    const double k = dp.lambda(0) * dp.lambda(0) / (1 - 2 * dp.lambda(1));
    CounterRng rng(2, 0);
    for (int n : {5, 50}) {
        Eigen::VectorXd z(n);
        std::normal_distribution<double> nd;
        for (int j = 0; j < n; ++j) {
            z(j) = nd(rng);
        }
        const FluctDraw f = fluct_from_normals(dp, c, z);
        EXPECT_NEAR(f.s, 0.5 * k * std::pow(std::sqrt(n) - z.norm(), 2), 1e-12);
    }
}

TEST(FluctTest, UnitScaledNormalsHaveNoQuadraticTerm) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const CltCovariance c = sigma_a(dp);
    Eigen::VectorXd z(4);
    z << 1.0, -1.0, 1.0, 1.0;  // ||z|| = sqrt(n)
    const FluctDraw f = fluct_from_normals(dp, c, z);
    EXPECT_NEAR(f.s, 0.0, 1e-15);
    const double expect_r = (4 * tilted_functions(dp, 1.0).l - 4 * c.mean(0)) / 2.0;
    EXPECT_NEAR(f.r, expect_r, 1e-12);
    EXPECT_THROW((void)fluct_from_normals(dp, c, Eigen::VectorXd::Ones(1)), DomainError);
}

TEST(LimitSamplerTest, RootReproducesSigma) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const CltCovariance c = sigma_a(dp);
    const LimitSampler ls(c, dp);
    const Eigen::Matrix4d back = ls.root() * ls.root().transpose();
    EXPECT_LT((back - c.sigma).norm(), 1e-9 * c.sigma.norm());
}

TEST(LimitSamplerTest, AssembleFormula) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const CltCovariance c = sigma_a(dp);
    const LimitSampler ls(c, dp);
    const LimitDraw d = ls.assemble({0.3, -1.2, 0.5, 0.1});
    EXPECT_NEAR(d.R, 0.3 + 0.6 * c.limit.e_dl_z, 1e-15);
    EXPECT_NEAR(d.S, c.limit.e_d2l_z2 * 1.44 / 8, 1e-15);
    const Eigen::Vector2d t(d.T1, d.T2);
    EXPECT_NEAR(d.log_m, d.S + t.dot(dp.hessian.inverse() * t), 1e-13);
}

TEST(KsTest, TwoSampleExamples) {
    EXPECT_EQ(ks_two_sample({1, 2, 3}, {1, 2, 3}), 0.0);
    EXPECT_EQ(ks_two_sample({1, 2}, {3, 4}), 1.0);
    EXPECT_NEAR(ks_two_sample({1, 2, 3, 4}, {2.5}), 0.5, 1e-15);
    EXPECT_THROW((void)ks_two_sample({}, {1.0}), DomainError);
}
