#pragma once

// Sharp large deviation prefactor for P_theta(W > a):
//
//   P ~ C / (kappa xi sqrt(2 pi n)) * exp(-n I_p(a) + sqrt(n) R)
//
// xi and kappa are deterministic; R, c and C depend on the direction theta.

#include <span>

#include <Eigen/Core>

#include "lpsld/dual.hpp"

namespace lpsld {

/// Which reading of the curvature ratio defines kappa^2.
enum class KappaForm {
    Laplace,  ///< kappa^2 = 1 - L2 / L1, from det(L1^{-1}(L1 - L2)) in the boundary Laplace integral
    Printed,  ///< kappa^2 = 1 - L1 / L2
};

/// Shipped default; selected by the two-dimensional Laplace-integral oracle
/// (see tests/acceptance).
inline constexpr KappaForm kDefaultKappaForm = KappaForm::Laplace;

struct PrefactorBundle {
    double rate = 0.0;   ///< I_p(a)
    double xi = 0.0;     ///< <H_a lambda_a, lambda_a>^{1/2}
    double L1 = 0.0;     ///< curvature of the level set {Psi^* = I_p(a)} at (a, 1)
    double L2 = 0.0;     ///< curvature of {x1 = a x2^{1/p}} at (a, 1)
    double kappa_sq_laplace = 0.0;
    double kappa_sq_printed = 0.0;
    KappaForm form = kDefaultKappaForm;
    double kappa = 0.0;  ///< sqrt of the kappa^2 selected by `form`

    /// log of exp(-n I) / (kappa xi sqrt(2 pi n)).
    [[nodiscard]] double log_baseline(int n) const;
    [[nodiscard]] double baseline(int n) const;
};

/// Throws DomainError for a <= 0 and DegenerateCurvature when L1 <= 0 or
/// the selected kappa^2 is not positive.
[[nodiscard]] PrefactorBundle constants(const DualPoint& dp, KappaForm form = kDefaultKappaForm);

struct DirectionCorrections {
    double psi_n = 0.0;  ///< Psi^n_theta(lambda_a) = (1/n) sum_j Lambda_p(sqrt(n) theta_j lambda_1, lambda_2)
    double R = 0.0;      ///< sqrt(n) (Psi^n - Psi)(lambda_a)
    Eigen::Vector2d c = Eigen::Vector2d::Zero();  ///< sqrt(n) grad (Psi^n - Psi)(lambda_a)
    double log_C = 0.0;  ///< ||H_a^{-1/2} c||^2
    double C = 1.0;      ///< exp(log_C)
    Eigen::Matrix2d Hn = Eigen::Matrix2d::Zero();  ///< Hess Psi^n(lambda_a)
};

/// Direction-dependent terms for a unit vector theta (||theta|| = 1 +- 1e-12,
/// otherwise DomainError). Psi_p uses the dual point's quadrature rule.
[[nodiscard]] DirectionCorrections direction_corrections(const DualPoint& dp, std::span<const double> theta);

struct SldEstimate {
    double log_value = 0.0;
    double value = 0.0;  ///< exp(log_value); may underflow to a denormal or zero
};

/// C / (kappa xi sqrt(2 pi n)) exp(-n I + sqrt(n) R), the o(1) term dropped.
[[nodiscard]] SldEstimate sld_estimate(const DualPoint& dp, const PrefactorBundle& bundle,
                                       const DirectionCorrections& dc, int n);

enum class Ordering { Less, Equal, Greater };

struct ExtremizerDiagnostic {
    double psi_uniform = 0.0;  ///< Psi^n at (1, ..., 1) / sqrt(n)
    double psi_basis = 0.0;    ///< Psi^n at e_1
    Ordering ordering = Ordering::Equal;
};

/// Compares Psi^n at the diagonal and at a basis vector; EQUAL when they
/// agree to 1e-9. Requires n >= 2.
[[nodiscard]] ExtremizerDiagnostic extremizer_diagnostic(const DualPoint& dp, int n);

[[nodiscard]] const char* to_string(Ordering o);
[[nodiscard]] const char* to_string(KappaForm f);

}  // namespace lpsld
