#pragma once

// Mixed log-MGF Psi_p(s) = E[Lambda_p(Z s1, s2)], Z ~ N(0, 1), and the
// Legendre dual problem grad Psi_p(lambda) = x that defines the rate function
// I_p(a) = Psi_p^*(a, 1).

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lpsld/pgauss.hpp"
#include "lpsld/quadrature.hpp"

namespace lpsld {

/// Psi_p with gradient and Hessian at one point.
struct PsiEval {
    double value = 0.0;
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

[[nodiscard]] PsiEval psi(const Eigen::Vector2d& s, const PExponent& p,
                          const GaussHermiteRule& rule = GaussHermiteRule::cached());

/// Solution of grad Psi_p(lambda) = x for a general target x.
struct LegendrePoint {
    Eigen::Vector2d x = Eigen::Vector2d::Zero();
    Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
    double value = 0.0;  ///< Psi_p^*(x) = <x, lambda> - Psi_p(lambda)
    Eigen::Matrix2d hessian = Eigen::Matrix2d::Identity();  ///< Hess Psi_p(lambda)
    double residual = 0.0;
};

/// Dual point for the threshold a: lambda_a, I_p(a), H_a.
struct DualPoint {
    double a = 0.0;
    PExponent p;
    Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
    double rate = 0.0;
    Eigen::Matrix2d hessian = Eigen::Matrix2d::Identity();
    double residual = 0.0;
    int quad_order = kDefaultHermiteOrder;

    [[nodiscard]] const GaussHermiteRule& rule() const { return GaussHermiteRule::cached(quad_order); }
};

struct SolverOptions {
    double residual_tol = 1e-10;
    int max_newton_steps = 50;
    double continuation_step = 0.05;
    double min_continuation_step = 1e-6;
};

/// Newton iteration from `start` on grad Psi_p(lambda) = x with backtracking
/// (halve until lambda_2 < 1/p and the residual decreases). Returns nullopt
/// when the tolerance is not met within the step budget.
[[nodiscard]] std::optional<LegendrePoint> newton_legendre(const Eigen::Vector2d& x,
                                                           const Eigen::Vector2d& start,
                                                           const PExponent& p,
                                                           const GaussHermiteRule& rule,
                                                           const SolverOptions& opts = {});

/// Psi_p^*(x) by continuation along the segment from (0, 1), where
/// lambda = (0, 0), to x. Throws DomainExceeded if the path cannot be
/// followed to x; `reached()` is the fraction of the segment completed.
[[nodiscard]] LegendrePoint legendre(const Eigen::Vector2d& x, const PExponent& p,
                                     const GaussHermiteRule& rule = GaussHermiteRule::cached(),
                                     const SolverOptions& opts = {});

/// I_p(a) = Psi_p^*(a, 1) with continuation in a. Negative a is reduced by
/// symmetry (lambda_1 changes sign). Throws DomainExceeded carrying the
/// largest |a| that was solved.
[[nodiscard]] DualPoint solve_dual(double a, const PExponent& p,
                                   int quad_order = kDefaultHermiteOrder,
                                   const SolverOptions& opts = {});

struct TauEntry {
    double tau = 0.0;
    std::optional<double> value;  ///< Psi_p^*(tau a, tau^p), empty when not solvable
    std::string status;           ///< "ok" or "domain_exceeded"
};

/// Psi_p^*(tau a, tau^p) on a grid of tau > 0.
[[nodiscard]] std::vector<TauEntry> tau_scan(double a, const PExponent& p,
                                             const std::vector<double>& taus,
                                             int quad_order = kDefaultHermiteOrder);

}  // namespace lpsld
