#include "lpsld/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lpsld/errors.hpp"
#include "lpsld/quadrature.hpp"

namespace lpsld {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    constexpr std::uint32_t kM0 = 0xD2511F53u;
    constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

Direction sample_direction(int n, CounterRng& rng, std::uint64_t seed) {
    if (n < 1) {
        throw DomainError("sample_direction: n must be positive");
    }
    std::normal_distribution<double> normal;
    std::vector<double> z(n);
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (double& v : z) {
            v = normal(rng);
            norm_sq += v * v;
        }
    } while (norm_sq == 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : z) {
        v *= inv;
    }
    return Direction{n, std::move(z), seed};
}

Direction direction_for(int n, std::uint64_t theta_seed) {
    CounterRng rng(theta_seed, stream_id(StreamPurpose::Direction, static_cast<std::uint64_t>(n)));
    return sample_direction(n, rng, theta_seed);
}

Direction make_direction(std::vector<double> v) {
    double norm_sq = 0.0;
    for (double x : v) {
        norm_sq += x * x;
    }
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
        throw DomainError("make_direction: vector must be nonzero and finite");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) {
        x *= inv;
    }
    const int n = static_cast<int>(v.size());
    return Direction{n, std::move(v), 0};
}

double sample_pgauss(const PExponent& p, CounterRng& rng) {
    const double pv = p.value();
    std::gamma_distribution<double> gamma(1.0 / pv, 1.0);
    const double g = gamma(rng);
    const double magnitude = std::pow(pv * g, 1.0 / pv);
    return (rng() & 1u) ? magnitude : -magnitude;
}

std::vector<double> sample_cone(int n, const PExponent& p, CounterRng& rng) {
    if (n < 1) {
        throw DomainError("sample_cone: n must be positive");
    }
    const double pv = p.value();
    std::vector<double> y(n);
    double sum = 0.0;
    do {
        sum = 0.0;
        for (double& v : y) {
            v = sample_pgauss(p, rng);
            sum += std::pow(std::abs(v), pv);
        }
    } while (sum == 0.0);
    const double inv = 1.0 / std::pow(sum, 1.0 / pv);
    for (double& v : y) {
        v *= inv;
    }
    return y;
}

double tilted_log_kernel(double y, double b, double c, double p) noexcept {
    return b * y - c * std::pow(std::abs(y), p);
}

TiltedSamplerTable::TiltedSamplerTable(double b, double lambda2, const PExponent& p)
    : b_(b), lambda2_(lambda2), c_(1.0 / p.value() - lambda2), log_norm_(0.0),
      untilted_(b == 0.0 && lambda2 == 0.0), p_(p),
      clamped_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (!(c_ > 0.0) || !std::isfinite(b)) {
        throw DomainError("TiltedSamplerTable: need lambda2 < 1/p and finite b");
    }
    log_norm_ = lambda_p_value(b, lambda2, p);
    const double pv = p.value();

    // Mode of b y - c |y|^p and a width scale from the curvature there.
    const double y_star = std::copysign(std::pow(std::abs(b) / (c_ * pv), 1.0 / (pv - 1.0)), b);
    const double g_star = tilted_log_kernel(y_star, b, c_, pv);
    auto g = [&](double y) { return tilted_log_kernel(y, b, c_, pv) - g_star; };
    double width = 1.0 / std::sqrt(c_ * pv * (pv - 1.0) * std::pow(std::abs(y_star), pv - 2.0));
    if (!std::isfinite(width)) {
        width = 1.0;
    }
    width = std::clamp(width, 1e-3, 1e6);

    const double depth = std::log(1e18);
    auto edge = [&](double dir) {
        double inner = 0.0;
        double outer = width;
        while (g(y_star + dir * outer) > -depth) {
            inner = outer;
            outer *= 2.0;
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (inner + outer);
            (g(y_star + dir * mid) > -depth ? inner : outer) = mid;
        }
        return y_star + dir * outer;
    };
    const double lo = edge(-1.0);
    const double hi = edge(+1.0);

    const int m = kGridPoints;
    y_.resize(m);
    F_.resize(m);
    slope_.resize(m);
    const double h = (hi - lo) / (m - 1);
    for (int i = 0; i < m; ++i) {
        y_[i] = lo + i * h;
    }
    y_.back() = hi;
    auto kernel = [&](double y) { return std::exp(g(y)); };
    F_[0] = 0.0;
    for (int i = 1; i < m; ++i) {
        F_[i] = F_[i - 1] + adaptive_integrate(kernel, y_[i - 1], y_[i], 1e-13 * h).value;
    }
    const double total = F_.back();
    for (int i = 0; i < m; ++i) {
        F_[i] /= total;
        slope_[i] = kernel(y_[i]) / total;
    }
    F_.back() = 1.0;

    // Fritsch-Carlson limiter keeps each Hermite segment monotone.
    for (int i = 0; i + 1 < m; ++i) {
        const double dx = y_[i + 1] - y_[i];
        const double delta = (F_[i + 1] - F_[i]) / dx;
        if (delta <= 0.0) {
            slope_[i] = 0.0;
            slope_[i + 1] = 0.0;
            continue;
        }
        const double alpha = slope_[i] / delta;
        const double beta = slope_[i + 1] / delta;
        const double r = alpha * alpha + beta * beta;
        if (r > 9.0) {
            const double tau = 3.0 / std::sqrt(r);
            slope_[i] = tau * alpha * delta;
            slope_[i + 1] = tau * beta * delta;
        }
    }
}

namespace {

double hermite(double t, double dx, double f0, double f1, double m0, double m1) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * dx * m0 + (-2 * t3 + 3 * t2) * f1 +
           (t3 - t2) * dx * m1;
}

}  // namespace

double TiltedSamplerTable::cdf_at(double y) const {
    if (y <= y_.front()) {
        return 0.0;
    }
    if (y >= y_.back()) {
        return 1.0;
    }
    const auto it = std::upper_bound(y_.begin(), y_.end(), y);
    const std::size_t i = static_cast<std::size_t>(it - y_.begin()) - 1;
    const double dx = y_[i + 1] - y_[i];
    return hermite((y - y_[i]) / dx, dx, F_[i], F_[i + 1], slope_[i], slope_[i + 1]);
}

double TiltedSamplerTable::quantile(double u) const {
    if (u <= 0.0 || u >= 1.0) {
        clamped_->fetch_add(1, std::memory_order_relaxed);
        return u <= 0.0 ? y_.front() : y_.back();
    }
    auto it = std::upper_bound(F_.begin(), F_.end(), u);
    std::size_t i = static_cast<std::size_t>(it - F_.begin());
    i = std::clamp<std::size_t>(i, 1, F_.size() - 1) - 1;
    const double dx = y_[i + 1] - y_[i];
    const double f0 = F_[i];
    const double f1 = F_[i + 1];
    const double m0 = slope_[i];
    const double m1 = slope_[i + 1];
    // Safeguarded Newton on the monotone segment, t in [0, 1].
    double lo = 0.0;
    double hi = 1.0;
    double t = f1 > f0 ? (u - f0) / (f1 - f0) : 0.5;
    for (int it2 = 0; it2 < 60; ++it2) {
        const double v = hermite(t, dx, f0, f1, m0, m1) - u;
        if (v > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        const double t2 = t * t;
        const double dv = (6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * dx * m0 + (-6 * t2 + 6 * t) * f1 +
                          (3 * t2 - 2 * t) * dx * m1;
        double next = dv > 0.0 ? t - v / dv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - t) < 1e-15 || hi - lo < 1e-15) {
            t = next;
            break;
        }
        t = next;
    }
    return y_[i] + t * dx;
}

double TiltedSamplerTable::sample(CounterRng& rng) const {
    if (untilted_) {
        return sample_pgauss(p_, rng);
    }
    return quantile(rng.uniform_open());
}

}  // namespace lpsld
