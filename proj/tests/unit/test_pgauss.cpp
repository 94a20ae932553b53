#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "lpsld/errors.hpp"
#include "lpsld/pgauss.hpp"
#include "lpsld/quadrature.hpp"
#include "oracles.hpp"

using namespace lpsld;

namespace {

double rel(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

TEST(PExponentTest, RejectsOutOfRange) {
    EXPECT_THROW((void)PExponent{1.0}, DomainError);
    EXPECT_THROW((void)PExponent{0.5}, DomainError);
    EXPECT_THROW((void)PExponent{std::nan("")}, DomainError);
    EXPECT_THROW((void)PExponent{INFINITY}, DomainError);
    EXPECT_NO_THROW((void)PExponent{1.0001});
    EXPECT_DOUBLE_EQ(PExponent(3.0).conjugate(), 1.5);
}

TEST(DensityTest, GaussianAtZero) {
    EXPECT_NEAR(density_fp(0.0, PExponent(2.0)), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
}

TEST(DensityTest, EvenAndPositive) {
    for (double p : {1.3, 2.0, 3.0, 7.5}) {
        const PExponent pe(p);
        for (double y = 0.0; y < 6.0; y += 0.37) {
            EXPECT_EQ(density_fp(y, pe), density_fp(-y, pe));
            if (std::pow(y, p) / p < 700.0) {
                EXPECT_GT(density_fp(y, pe), 0.0);
            }
            EXPECT_NEAR(density_fp(y, pe), oracle::fp_density(y, p), 1e-15);
        }
    }
}

TEST(DensityTest, NormalizedP3) {
    const PExponent p(3.0);
    const double reach = std::pow(3.0 * 60.0, 1.0 / 3.0);
    const auto r = adaptive_integrate([&](double y) { return density_fp(y, p); }, -reach, reach, 1e-12);
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(DensityTest, CdfMatchesQuadrature) {
    for (double p : {1.5, 3.0}) {
        const PExponent pe(p);
        for (double y : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
            const double ref = 0.5 + std::copysign(oracle::integrate([&](double u) { return oracle::fp_density(u, p); },
                                                                      0.0, std::abs(y)),
                                                   y);
            EXPECT_NEAR(cdf_fp(y, pe), ref, 1e-13);
        }
    }
}

TEST(MomentTest, OddMomentsVanish) {
    for (double p : {1.5, 2.0, 3.0}) {
        for (int m : {1, 3, 5, 11}) {
            EXPECT_EQ(moment(m, PExponent(p)), 0.0);
        }
    }
}

TEST(MomentTest, GaussianVariance) {
    EXPECT_NEAR(moment(2, PExponent(2.0)), 1.0, 1e-14);
    EXPECT_NEAR(moment(4, PExponent(2.0)), 3.0, 1e-13);
    EXPECT_NEAR(moment(0, PExponent(2.7)), 1.0, 1e-15);
}

TEST(MomentTest, AbsMomentOfOrderPIsOne) {
    for (double p : {1.5, 3.0}) {
        const PExponent pe(p);
        EXPECT_NEAR(abs_moment(p, pe), 1.0, 1e-13);
        const double quad = 2.0 * oracle::integrate(
                                      [&](double y) { return std::pow(y, p) * oracle::fp_density(y, p); }, 0.0,
                                      std::pow(p * 80.0, 1.0 / p));
        EXPECT_NEAR(quad, 1.0, 1e-10);
    }
}

TEST(MomentTest, EvenMomentsMatchQuadrature) {
    for (double p : {1.5, 3.0}) {
        for (int m : {2, 4, 6, 10}) {
            const double quad = 2.0 * oracle::integrate(
                                          [&](double y) { return std::pow(y, m) * oracle::fp_density(y, p); }, 0.0,
                                          std::pow(p * 120.0, 1.0 / p) + 10.0);
            EXPECT_LT(rel(moment(m, PExponent(p)), quad), 1e-10) << "p=" << p << " m=" << m;
        }
    }
}

TEST(MomentTest, NegativeOrderRejected) {
    EXPECT_THROW((void)moment(-1, PExponent(2.0)), DomainError);
}

TEST(MgfTest, AtZero) {
    for (double p : {1.5, 2.0, 3.0}) {
        EXPECT_DOUBLE_EQ(mgf(0.0, PExponent(p), 0), 1.0);
        EXPECT_DOUBLE_EQ(mgf(0.0, PExponent(p), 1), 0.0);
        EXPECT_NEAR(mgf(0.0, PExponent(p), 2), moment(2, PExponent(p)), 1e-14);
    }
}

TEST(MgfTest, GaussianClosedForm) {
    const PExponent p(2.0);
    for (double t : {0.5, 1.0, 2.0, -1.3, 6.0}) {
        EXPECT_LT(rel(mgf(t, p, 0), std::exp(0.5 * t * t)), 1e-10) << t;
        EXPECT_LT(rel(mgf(t, p, 1), t * std::exp(0.5 * t * t)), 1e-10) << t;
        EXPECT_LT(rel(mgf(t, p, 2), (1 + t * t) * std::exp(0.5 * t * t)), 1e-10) << t;
    }
}

TEST(MgfTest, SeriesAgreesWithQuadrature) {
    for (double p : {1.5, 3.0}) {
        const PExponent pe(p);
        for (double t = -5.0; t <= 5.0001; t += 0.25) {
            const LogMgf s = log_mgf(t, pe, MgfMethod::Series);
            const double ref0 = oracle::mgf_moment(t, p, 0);
            const double ref1 = oracle::mgf_moment(t, p, 1);
            const double ref2 = oracle::mgf_moment(t, p, 2);
            EXPECT_LT(rel(std::exp(s.value), ref0), 1e-9) << "p=" << p << " t=" << t;
            EXPECT_NEAR(s.d1, ref1 / ref0, 1e-9 * (1 + std::abs(ref1 / ref0)));
            const double var = ref2 / ref0 - (ref1 / ref0) * (ref1 / ref0);
            EXPECT_NEAR(s.d2, var, 1e-8 * (1 + var));
        }
    }
}

TEST(MgfTest, WindowAgreesWithSeriesAndQuadrature) {
    for (double p : {1.5, 2.5, 3.0, 6.0}) {
        const PExponent pe(p);
        for (double t : {-7.0, -2.0, 0.5, 3.0, 9.0}) {
            const LogMgf w = log_mgf(t, pe, MgfMethod::Window);
            const double ref = std::log(oracle::mgf_moment(t, p, 0));
            EXPECT_NEAR(w.value, ref, 1e-10 * (1 + std::abs(ref))) << "p=" << p << " t=" << t;
        }
        // far beyond the series range the two automatic regimes must join up
        for (double t : {15.0, 40.0}) {
            const LogMgf w = log_mgf(t, pe);
            const double ref = std::log(oracle::mgf_moment(t, p, 0));
            EXPECT_NEAR(w.value, ref, 1e-10 * (1 + std::abs(ref))) << "p=" << p << " t=" << t;
        }
    }
}

TEST(MgfTest, AtLeastOneAndIncreasingInAbsT) {
    for (double p : {1.5, 3.0}) {
        const PExponent pe(p);
        double prev = mgf(0.0, pe);
        for (double t = 0.1; t < 8.0; t += 0.1) {
            const double m = mgf(t, pe);
            EXPECT_GE(m, 1.0);
            EXPECT_GT(m, prev);
            EXPECT_NEAR(mgf(-t, pe), m, 1e-12 * m);
            prev = m;
        }
    }
}

TEST(LambdaTest, Origin) {
    for (double p : {1.5, 2.0, 3.0}) {
        const LambdaEval e = lambda_p(0.0, 0.0, PExponent(p));
        EXPECT_NEAR(e.value, 0.0, 1e-15);
        EXPECT_NEAR(e.grad(0), 0.0, 1e-15);
        EXPECT_NEAR(e.grad(1), 1.0, 1e-13);
    }
}

TEST(LambdaTest, GaussianClosedForm) {
    const PExponent p(2.0);
    for (double t1 : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
        for (double t2 : {-3.0, -0.5, 0.0, 0.2, 0.45}) {
            const LambdaEval e = lambda_p(t1, t2, p);
            const double v = oracle::lambda2_value(t1, t2);
            EXPECT_NEAR(e.value, v, 1e-10 * std::max(1.0, std::abs(v)));
            const Eigen::Vector2d g = oracle::lambda2_grad(t1, t2);
            const Eigen::Matrix2d h = oracle::lambda2_hess(t1, t2);
            for (int i = 0; i < 2; ++i) {
                EXPECT_NEAR(e.grad(i), g(i), 1e-9 * std::max(1.0, std::abs(g(i))));
                for (int j = 0; j < 2; ++j) {
                    EXPECT_NEAR(e.hess(i, j), h(i, j), 1e-9 * std::max(1.0, std::abs(h(i, j))));
                }
            }
        }
    }
}

TEST(LambdaTest, FiniteDifferences) {
    const PExponent p(3.0);
    const double h = 1e-5;
    const double t1 = 0.3;
    const double t2 = 0.1;
    const LambdaEval e = lambda_p(t1, t2, p);
    auto v = [&](double a, double b) { return lambda_p_value(a, b, p); };
    const double g1 = (v(t1 + h, t2) - v(t1 - h, t2)) / (2 * h);
    const double g2 = (v(t1, t2 + h) - v(t1, t2 - h)) / (2 * h);
    EXPECT_LT(rel(e.grad(0), g1), 1e-6);
    EXPECT_LT(rel(e.grad(1), g2), 1e-6);
    auto g = [&](double a, double b) { return lambda_p(a, b, p).grad; };
    const Eigen::Vector2d d1 = (g(t1 + h, t2) - g(t1 - h, t2)) / (2 * h);
    const Eigen::Vector2d d2 = (g(t1, t2 + h) - g(t1, t2 - h)) / (2 * h);
    EXPECT_LT(rel(e.hess(0, 0), d1(0)), 1e-6);
    EXPECT_LT(rel(e.hess(1, 0), d1(1)), 1e-6);
    EXPECT_LT(rel(e.hess(0, 1), d2(0)), 1e-6);
    EXPECT_LT(rel(e.hess(1, 1), d2(1)), 1e-6);
}

TEST(LambdaTest, FiniteDifferencesAcrossRegimes) {
    // points on both sides of the series/window switch
    for (double p : {1.5, 3.0}) {
        const PExponent pe(p);
        for (auto [t1, t2] : {std::pair{2.0, -0.4}, {9.0, -1.0}, {25.0, 0.0}, {-14.0, 0.2}}) {
            const double h = 1e-5 * std::max(1.0, std::abs(t1));
            const LambdaEval e = lambda_p(t1, t2, pe);
            const double g1 = (lambda_p_value(t1 + h, t2, pe) - lambda_p_value(t1 - h, t2, pe)) / (2 * h);
            EXPECT_LT(rel(e.grad(0), g1), 1e-6) << p << " " << t1 << " " << t2;
            const double hh = 1e-5;
            const double g2 = (lambda_p_value(t1, t2 + hh, pe) - lambda_p_value(t1, t2 - hh, pe)) / (2 * hh);
            EXPECT_LT(rel(e.grad(1), g2), 1e-6) << p << " " << t1 << " " << t2;
        }
    }
}

TEST(LambdaTest, EvenConvexAndDomain) {
    for (double p : {1.5, 2.0, 3.0}) {
        const PExponent pe(p);
        for (double t1 : {0.1, 1.0, 4.0, 12.0}) {
            for (double t2 : {-2.0, 0.0, 0.9 / p}) {
                const LambdaEval a = lambda_p(t1, t2, pe);
                const LambdaEval b = lambda_p(-t1, t2, pe);
                EXPECT_NEAR(a.value, b.value, 1e-12 * std::max(1.0, std::abs(a.value)));
                EXPECT_EQ(a.hess(0, 1), a.hess(1, 0));
                EXPECT_GT(a.hess(0, 0), 0.0);
                EXPECT_GT(a.hess.determinant(), 0.0);
            }
        }
        EXPECT_THROW((void)lambda_p(0.0, 1.0 / p, pe), DomainError);
        EXPECT_THROW((void)lambda_p(1.0, 2.0, pe), DomainError);
    }
}
