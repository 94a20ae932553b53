#include "lpsld/prefactor.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lpsld/errors.hpp"

namespace lpsld {

double PrefactorBundle::log_baseline(int n) const {
    return -n * rate - std::log(kappa * xi) - 0.5 * std::log(2.0 * std::numbers::pi * n);
}

double PrefactorBundle::baseline(int n) const {
    return std::exp(log_baseline(n));
}

PrefactorBundle constants(const DualPoint& dp, KappaForm form) {
    const double a = std::abs(dp.a);
    if (!(a > 0.0)) {
        throw DomainError("prefactor constants need a > 0");
    }
    const double p = dp.p.value();
    const double l1 = std::abs(dp.lambda(0));
    const double l2 = dp.lambda(1);
    const Eigen::Matrix2d& H = dp.hessian;
    const Eigen::Matrix2d Hinv = H.inverse();

    PrefactorBundle b;
    b.rate = dp.rate;
    const Eigen::Vector2d lam(l1, l2);
    b.xi = std::sqrt(lam.dot(H * lam));
    b.L1 = std::abs(l2 * l2 * Hinv(0, 0) - 2.0 * l1 * l2 * Hinv(0, 1) + l1 * l1 * Hinv(1, 1)) /
           std::pow(l1 * l1 + l2 * l2, 1.5);
    b.L2 = p * (p - 1.0) * a / std::pow(a * a + p * p, 1.5);
    if (!(b.L1 > 0.0)) {
        throw DegenerateCurvature("level-set curvature L1 is not positive");
    }
    b.kappa_sq_laplace = 1.0 - b.L2 / b.L1;
    b.kappa_sq_printed = 1.0 - b.L1 / b.L2;
    b.form = form;
    const double ksq = form == KappaForm::Laplace ? b.kappa_sq_laplace : b.kappa_sq_printed;
    if (!(ksq > 0.0)) {
        throw DegenerateCurvature(std::string("kappa^2 (") + to_string(form) + ") = " +
                                  std::to_string(ksq) + " is not positive");
    }
    b.kappa = std::sqrt(ksq);
    return b;
}

DirectionCorrections direction_corrections(const DualPoint& dp, std::span<const double> theta) {
    const std::size_t n = theta.size();
    if (n == 0) {
        throw DomainError("direction_corrections: empty direction");
    }
    double norm_sq = 0.0;
    for (double t : theta) {
        norm_sq += t * t;
    }
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12) {
        throw DomainError("direction_corrections: theta must be a unit vector");
    }
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double l1 = dp.lambda(0);
    const double l2 = dp.lambda(1);

    DirectionCorrections out;
    Eigen::Vector2d grad_n = Eigen::Vector2d::Zero();
    for (double t : theta) {
        const double u = sqrt_n * t;
        const LambdaEval l = lambda_p(u * l1, l2, dp.p);
        out.psi_n += l.value;
        grad_n(0) += u * l.grad(0);
        grad_n(1) += l.grad(1);
        out.Hn(0, 0) += u * u * l.hess(0, 0);
        out.Hn(0, 1) += u * l.hess(0, 1);
        out.Hn(1, 1) += l.hess(1, 1);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    out.psi_n *= inv_n;
    grad_n *= inv_n;
    out.Hn *= inv_n;
    out.Hn(1, 0) = out.Hn(0, 1);

    const PsiEval ref = psi(dp.lambda, dp.p, dp.rule());
    out.R = sqrt_n * (out.psi_n - ref.value);
    out.c = sqrt_n * (grad_n - ref.grad);
    out.log_C = out.c.dot(dp.hessian.ldlt().solve(out.c));
    out.C = std::exp(out.log_C);
    return out;
}

SldEstimate sld_estimate(const DualPoint& dp, const PrefactorBundle& bundle,
                         const DirectionCorrections& dc, int n) {
    if (n < 1) {
        throw DomainError("sld_estimate: n must be positive");
    }
    if (std::abs(bundle.rate - dp.rate) > 1e-12 * (1.0 + dp.rate)) {
        throw DomainError("sld_estimate: prefactor bundle belongs to a different dual point");
    }
    SldEstimate out;
    out.log_value = dc.log_C + bundle.log_baseline(n) + std::sqrt(static_cast<double>(n)) * dc.R;
    out.value = std::exp(out.log_value);
    return out;
}

ExtremizerDiagnostic extremizer_diagnostic(const DualPoint& dp, int n) {
    if (n < 2) {
        throw DomainError("extremizer_diagnostic needs n >= 2");
    }
    const double l1 = dp.lambda(0);
    const double l2 = dp.lambda(1);
    ExtremizerDiagnostic out;
    // theta = (1,...,1)/sqrt(n): every coordinate contributes Lambda_p(l1, l2).
    out.psi_uniform = lambda_p_value(l1, l2, dp.p);
    // theta = e_1: one coordinate at sqrt(n) l1, the rest at 0.
    const double nn = n;
    out.psi_basis = (lambda_p_value(std::sqrt(nn) * l1, l2, dp.p) + (nn - 1.0) * lambda_p_value(0.0, l2, dp.p)) / nn;
    const double diff = out.psi_uniform - out.psi_basis;
    if (std::abs(diff) <= 1e-9) {
        out.ordering = Ordering::Equal;
    } else {
        out.ordering = diff > 0.0 ? Ordering::Greater : Ordering::Less;
    }
    return out;
}

const char* to_string(Ordering o) {
    switch (o) {
    case Ordering::Less: return "LESS";
    case Ordering::Equal: return "EQUAL";
    case Ordering::Greater: return "GREATER";
    }
    return "?";
}

const char* to_string(KappaForm f) {
    return f == KappaForm::Laplace ? "laplace" : "printed";
}

}  // namespace lpsld
