#pragma once

// Fluctuations of the direction-dependent terms. For the tilted functions
//
//   l(x)  = Lambda_p(x lambda_1, lambda_2)
//   l1(x) = x d1 Lambda_p(x lambda_1, lambda_2)
//   l2(x) = d2 Lambda_p(x lambda_1, lambda_2)
//
// Sigma is the covariance of (l(Z), Z^2, l1(Z), l2(Z)) under N(0, 1). With
// (A, D, E, G) ~ N(0, Sigma) the limit tuple is
//
//   R = A - E[l'(Z) Z] D / 2,   S = E[l''(Z) Z^2] D^2 / 8,
//   T_i = (E or G) - E[l_i'(Z) Z] D / 2,   M = exp(S + T' H^{-1} T).

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "lpsld/dual.hpp"
#include "lpsld/rng.hpp"

namespace lpsld {

/// Values and derivatives of the tilted functions at one point.
struct TiltedFunctions {
    double l = 0.0, dl = 0.0, d2l = 0.0;
    double l1 = 0.0, dl1 = 0.0;
    double l2 = 0.0, dl2 = 0.0;
};

[[nodiscard]] TiltedFunctions tilted_functions(const DualPoint& dp, double x);

struct LimitConstants {
    double e_dl_z = 0.0;    ///< E[l'(Z) Z]
    double e_d2l_z2 = 0.0;  ///< E[l''(Z) Z^2]
    double e_dl1_z = 0.0;   ///< E[l1'(Z) Z]
    double e_dl2_z = 0.0;   ///< E[l2'(Z) Z]
};

struct CltCovariance {
    Eigen::Matrix4d sigma = Eigen::Matrix4d::Zero();
    LimitConstants limit;
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();  ///< E of (l, Z^2, l1, l2): the centering constants

    /// Var(R) = Sigma_11 - E[l'Z] Sigma_12 + E[l'Z]^2 Sigma_22 / 4.
    [[nodiscard]] double limit_var_r() const;
};

/// Sigma and the limit constants by Gauss-Hermite quadrature.
[[nodiscard]] CltCovariance sigma_a(const DualPoint& dp, const GaussHermiteRule& rule);
[[nodiscard]] CltCovariance sigma_a(const DualPoint& dp);

struct FluctDraw {
    double r = 0.0, s = 0.0, t1 = 0.0, t2 = 0.0;
    double log_m = 0.0;  ///< s + t' H^{-1} t
    double m = 1.0;      ///< exp(log_m)
};

/// r_n, s_n, t_n and M_n for a given normal vector z (n = z.size() >= 2).
[[nodiscard]] FluctDraw fluct_from_normals(const DualPoint& dp, const CltCovariance& cov,
                                           const Eigen::VectorXd& z);

/// Draws z ~ N(0, I_n) from rng and evaluates fluct_from_normals.
[[nodiscard]] FluctDraw fluct_sample(const DualPoint& dp, const CltCovariance& cov, int n, CounterRng& rng);

struct LimitDraw {
    double R = 0.0, S = 0.0, T1 = 0.0, T2 = 0.0;
    double log_m = 0.0;
    double M = 1.0;
};

/// N(0, Sigma) via Cholesky (LLT); a symmetric eigen square root with
/// negative eigenvalues clipped is used when Sigma is only semidefinite.
class LimitSampler {
public:
    LimitSampler(const CltCovariance& cov, const DualPoint& dp);

    [[nodiscard]] LimitDraw draw(CounterRng& rng) const;
    /// Assembles the tuple from an explicit (A, D, E, G).
    [[nodiscard]] LimitDraw assemble(const Eigen::Vector4d& adeg) const;

    [[nodiscard]] bool used_cholesky() const noexcept { return cholesky_; }
    [[nodiscard]] const Eigen::Matrix4d& root() const noexcept { return root_; }

private:
    LimitConstants limit_;
    Eigen::Matrix4d root_;
    Eigen::Matrix2d hinv_;
    bool cholesky_ = true;
};

[[nodiscard]] LimitDraw limit_sample(const CltCovariance& cov, const DualPoint& dp, CounterRng& rng);

/// Two-sample Kolmogorov-Smirnov distance sup |F_x - F_y|.
[[nodiscard]] double ks_two_sample(std::vector<double> x, std::vector<double> y);

}  // namespace lpsld
