#pragma once

// The generalized p-th Gaussian law gamma_p, density proportional to
// exp(-|y|^p / p), and the joint log-moment generating function
//
//   Lambda_p(t1, t2) = log E[exp(t1 Y + t2 |Y|^p)],   t2 < 1/p,
//
// evaluated through the reduction
//
//   Lambda_p(t1, t2) = -(1/p) log(1 - p t2) + log M(t1 / (1 - p t2)^{1/p}).

#include <memory>
#include <vector>

#include <Eigen/Core>

namespace lpsld {

namespace detail {
struct MomentSeries;
}

/// Exponent p of the law, 1 < p < inf. Owns the cached even-moment ratios
/// used by the MGF power series; copies share the (immutable) cache.
class PExponent {
public:
    explicit PExponent(double p);

    [[nodiscard]] double value() const noexcept { return p_; }
    /// Hoelder conjugate q = p / (p - 1).
    [[nodiscard]] double conjugate() const noexcept { return p_ / (p_ - 1.0); }
    /// log of the density normalizer 2 p^{1/p} Gamma(1 + 1/p).
    [[nodiscard]] double log_normalizer() const noexcept { return log_norm_; }

    [[nodiscard]] const detail::MomentSeries& series() const noexcept { return *series_; }

    friend bool operator==(const PExponent& a, const PExponent& b) noexcept { return a.p_ == b.p_; }

private:
    double p_;
    double log_norm_;
    std::shared_ptr<const detail::MomentSeries> series_;
};

/// f_p(y) = exp(-|y|^p/p) / (2 p^{1/p} Gamma(1 + 1/p)).
[[nodiscard]] double density_fp(double y, const PExponent& p);

/// log f_p(y).
[[nodiscard]] double log_density_fp(double y, const PExponent& p);

/// P(Y <= y) through the regularized incomplete gamma function.
[[nodiscard]] double cdf_fp(double y, const PExponent& p);

/// E[Y^m]: zero for odd m, p^{m/p} Gamma((m+1)/p) / Gamma(1/p) for even m.
[[nodiscard]] double moment(int m, const PExponent& p);

/// E[|Y|^r] for real r > -1, same Gamma-ratio formula.
[[nodiscard]] double abs_moment(double r, const PExponent& p);

/// How log M(t) is evaluated.
enum class MgfMethod {
    Automatic,  ///< series for moderate |t|, windowed quadrature beyond
    Series,     ///< even-moment power series only (throws NoConvergence if it cannot)
    Window,     ///< Gauss-Legendre quadrature on the window around the tilted mode
};

/// log M(t) together with its first two derivatives:
/// d1 = M'/M is the tilted mean, d2 = (log M)'' is the tilted variance.
struct LogMgf {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

[[nodiscard]] LogMgf log_mgf(double t, const PExponent& p, MgfMethod method = MgfMethod::Automatic);

/// d^order/dt^order M(t) = E[Y^order exp(tY)], order in {0, 1, 2}.
/// Throws NonFinite when the value overflows a double.
[[nodiscard]] double mgf(double t, const PExponent& p, int order = 0);

/// Value, gradient and Hessian of Lambda_p at a point.
struct LambdaEval {
    double value = 0.0;
    Eigen::Vector2d grad = Eigen::Vector2d::Zero();
    Eigen::Matrix2d hess = Eigen::Matrix2d::Zero();
};

/// Lambda_p(t1, t2) with first and second partials. Throws DomainError
/// unless t2 < 1/p.
[[nodiscard]] LambdaEval lambda_p(double t1, double t2, const PExponent& p);

/// Value only; cheaper when no derivatives are needed.
[[nodiscard]] double lambda_p_value(double t1, double t2, const PExponent& p);

}  // namespace lpsld
