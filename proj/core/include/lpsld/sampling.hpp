#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "lpsld/pgauss.hpp"
#include "lpsld/rng.hpp"

namespace lpsld {

/// Projection direction theta, uniform on the Euclidean unit sphere.
struct Direction {
    int n = 0;
    std::vector<double> theta;
    std::uint64_t seed = 0;
};

/// n i.i.d. standard normals, normalized.
[[nodiscard]] Direction sample_direction(int n, CounterRng& rng, std::uint64_t seed = 0);

/// Direction for dimension n derived from theta_seed: stream (Direction, n).
[[nodiscard]] Direction direction_for(int n, std::uint64_t theta_seed);

/// Normalizes an explicit vector into a Direction (DomainError if zero).
[[nodiscard]] Direction make_direction(std::vector<double> v);

/// Y ~ gamma_p via |Y|^p / p ~ Gamma(1/p, 1) with an independent sign.
[[nodiscard]] double sample_pgauss(const PExponent& p, CounterRng& rng);

/// Cone-measure point on the unit l_p^n sphere: Y / ||Y||_p.
[[nodiscard]] std::vector<double> sample_cone(int n, const PExponent& p, CounterRng& rng);

/// Inverse-CDF sampler for the exponentially tilted law with density
/// proportional to exp(b y - c |y|^p), c = 1/p - lambda2 > 0, i.e.
/// exp(b y + lambda2 |y|^p - Lambda_p(b, lambda2)) f_p(y). The CDF is
/// tabulated on the bracket where the density exceeds 1e-18 of its mode and
/// interpolated by monotone cubic Hermite segments.
class TiltedSamplerTable {
public:
    static constexpr int kGridPoints = 2048;

    TiltedSamplerTable(double b, double lambda2, const PExponent& p);

    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double lambda2() const noexcept { return lambda2_; }
    /// Lambda_p(b, lambda2), the exact log normalizer of the tilt.
    [[nodiscard]] double log_norm() const noexcept { return log_norm_; }
    /// b == 0 and lambda2 == 0: the law is gamma_p itself and draws go
    /// through sample_pgauss.
    [[nodiscard]] bool untilted() const noexcept { return untilted_; }

    [[nodiscard]] const std::vector<double>& grid() const noexcept { return y_; }
    [[nodiscard]] const std::vector<double>& cdf() const noexcept { return F_; }

    /// Interpolated CDF at y (0 below the bracket, 1 above).
    [[nodiscard]] double cdf_at(double y) const;
    /// Interpolated quantile: the y with cdf_at(y) = u.
    [[nodiscard]] double quantile(double u) const;

    [[nodiscard]] double sample(CounterRng& rng) const;

    /// Number of uniforms that fell outside the tabulated range and were clamped.
    [[nodiscard]] std::uint64_t clamped() const noexcept { return clamped_->load(); }

private:
    double b_;
    double lambda2_;
    double c_;
    double log_norm_;
    bool untilted_;
    PExponent p_;
    std::vector<double> y_;
    std::vector<double> F_;
    std::vector<double> slope_;  // dF/dy at the grid points after limiting
    std::shared_ptr<std::atomic<std::uint64_t>> clamped_;
};

/// Tilted sampler for density exp(b y - c |y|^p) / Z, the unnormalized log-density
/// used to build the table, exposed for tests.
[[nodiscard]] double tilted_log_kernel(double y, double b, double c, double p) noexcept;

}  // namespace lpsld
