#include "lpsld/pgauss.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "lpsld/errors.hpp"

namespace lpsld {

namespace detail {

// Term ratios of the three even/odd moment series
//   M(t)   = sum_k t^{2k}   E[Y^{2k}]   / (2k)!
//   M'(t)  = sum_k t^{2k+1} E[Y^{2k+2}] / (2k+1)!
//   M''(t) = sum_k t^{2k}   E[Y^{2k+2}] / (2k)!
// All terms are nonnegative for t >= 0, so each sum is accumulated by a
// multiplicative recurrence without cancellation.
struct MomentSeries {
    static constexpr int kMaxTerms = 4096;

    double second_moment = 0.0;   // E[Y^2]
    std::vector<double> ratio0;   // T0_{k+1} / (t^2 T0_k)
    std::vector<double> ratio1;   // T1_{k+1} / (t^2 T1_k)
    std::vector<double> ratio2;   // T2_{k+1} / (t^2 T2_k)

    explicit MomentSeries(double p) {
        // e[k] = E[Y^{2k+2}] / E[Y^{2k}] = p^{2/p} Gamma((2k+3)/p) / Gamma((2k+1)/p)
        std::vector<double> e(kMaxTerms + 1);
        const double log_p2 = 2.0 / p * std::log(p);
        for (int k = 0; k <= kMaxTerms; ++k) {
            e[k] = std::exp(log_p2 + std::lgamma((2.0 * k + 3.0) / p) - std::lgamma((2.0 * k + 1.0) / p));
        }
        second_moment = e[0];
        ratio0.resize(kMaxTerms);
        ratio1.resize(kMaxTerms);
        ratio2.resize(kMaxTerms);
        for (int k = 0; k < kMaxTerms; ++k) {
            const double kk = k;
            ratio0[k] = e[k] / ((2 * kk + 1) * (2 * kk + 2));
            ratio1[k] = e[k + 1] / ((2 * kk + 2) * (2 * kk + 3));
            ratio2[k] = e[k + 1] / ((2 * kk + 1) * (2 * kk + 2));
        }
    }
};

}  // namespace detail

namespace {

constexpr double kSeriesReach = 120.0;  // series used while |t|^q <= kSeriesReach
constexpr double kWindowDepth = 46.0;   // integrand kept down to exp(-46) of its peak

// Sum of a nonnegative series with term ratios t2 * ratio[k]; nullopt when
// the terms have not decayed within the cached range.
std::optional<double> sum_series(double first, double t2, const std::vector<double>& ratio) {
    double term = first;
    double sum = first;
    for (std::size_t k = 0; k < ratio.size(); ++k) {
        const double r = t2 * ratio[k];
        term *= r;
        sum += term;
        if (r < 0.5 && term <= 1e-17 * sum) {
            return sum;
        }
    }
    return std::nullopt;
}

std::optional<LogMgf> log_mgf_series(double t, const PExponent& p) {
    const auto& s = p.series();
    const double x = std::abs(t);
    const double x2 = x * x;
    const auto s0 = sum_series(1.0, x2, s.ratio0);
    const auto s1 = sum_series(x * s.second_moment, x2, s.ratio1);
    const auto s2 = sum_series(s.second_moment, x2, s.ratio2);
    if (!s0 || !s1 || !s2) {
        return std::nullopt;
    }
    LogMgf out;
    out.value = std::log(*s0);
    const double mean = *s1 / *s0;
    out.d1 = t < 0 ? -mean : mean;
    out.d2 = *s2 / *s0 - mean * mean;
    return out;
}

template <std::size_t N>
struct GaussLegendre {
    std::array<double, N> x{};
    std::array<double, N> w{};

    GaussLegendre() {
        using rule = boost::math::quadrature::gauss<double, N>;
        const auto& abs = rule::abscissa();
        const auto& wts = rule::weights();
        std::size_t i = 0;
        for (std::size_t j = 0; j < abs.size(); ++j) {
            if (abs[j] == 0.0) {
                x[i] = 0.0;
                w[i++] = wts[j];
                continue;
            }
            x[i] = abs[j];
            w[i++] = wts[j];
            x[i] = -abs[j];
            w[i++] = wts[j];
        }
    }
};

const GaussLegendre<20>& gl20() {
    static const GaussLegendre<20> rule;
    return rule;
}

// log M(t) by Gauss-Legendre quadrature of exp(t y - |y|^p/p) over the window
// where the integrand exceeds exp(-kWindowDepth) of its maximum, in
// coordinates centred on the tilted mode y* = sign(t) |t|^{1/(p-1)}.
LogMgf log_mgf_window(double t, const PExponent& pe) {
    const double p = pe.value();
    const double x = std::abs(t);
    const double y_star = std::copysign(std::pow(x, 1.0 / (p - 1.0)), t);
    const double g_star = std::pow(x, pe.conjugate()) / pe.conjugate();
    auto g = [&](double y) { return t * y - std::pow(std::abs(y), p) / p - g_star; };

    double width = 1.0 / std::sqrt((p - 1.0) * std::pow(std::abs(y_star), p - 2.0));
    if (!std::isfinite(width)) {
        width = 1.0;
    }
    width = std::clamp(width, 1e-3, 1e6);

    auto edge = [&](double dir) {
        double inner = 0.0;
        double outer = width;
        while (g(y_star + dir * outer) > -kWindowDepth) {
            inner = outer;
            outer *= 2.0;
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (inner + outer);
            (g(y_star + dir * mid) > -kWindowDepth ? inner : outer) = mid;
        }
        return y_star + dir * outer;
    };
    const double lo = edge(-1.0);
    const double hi = edge(+1.0);

    double i0 = 0.0;
    double i1 = 0.0;
    double i2 = 0.0;
    const auto& rule = gl20();
    auto integrate_piece = [&](double a, double b) {
        if (b <= a) {
            return;
        }
        auto panel = [&](double u, double v) {
            const double mid = 0.5 * (u + v);
            const double half = 0.5 * (v - u);
            for (std::size_t j = 0; j < rule.x.size(); ++j) {
                const double y = mid + half * rule.x[j];
                const double f = half * rule.w[j] * std::exp(g(y));
                const double d = y - y_star;
                i0 += f;
                i1 += f * d;
                i2 += f * d * d;
            }
        };
        const int panels = std::clamp(static_cast<int>(std::ceil((b - a) / width)), 8, 400);
        const double h = (b - a) / panels;
        for (int k = 0; k < panels; ++k) {
            const double u = a + k * h;
            const double v = k + 1 == panels ? b : u + h;
            // |y|^p is not smooth at 0 unless p is an even integer: grade the
            // panel touching 0 geometrically towards it
            const bool at_zero = (k == 0 && a == 0.0) || (k + 1 == panels && b == 0.0);
            if (!at_zero) {
                panel(u, v);
                continue;
            }
            const double sgn = a == 0.0 ? 1.0 : -1.0;
            double outer = std::abs(a == 0.0 ? v : u);
            for (int level = 0; level < 12; ++level) {
                const double inner = 0.15 * outer;
                panel(std::min(sgn * inner, sgn * outer), std::max(sgn * inner, sgn * outer));
                outer = inner;
            }
            panel(std::min(0.0, sgn * outer), std::max(0.0, sgn * outer));
        }
    };
    if (lo < 0.0 && hi > 0.0) {
        integrate_piece(lo, 0.0);
        integrate_piece(0.0, hi);
    } else {
        integrate_piece(lo, hi);
    }

    LogMgf out;
    out.value = g_star + std::log(i0) - pe.log_normalizer();
    const double shift = i1 / i0;
    out.d1 = y_star + shift;
    out.d2 = i2 / i0 - shift * shift;
    return out;
}

}  // namespace

PExponent::PExponent(double p) : p_(p) {
    if (!std::isfinite(p) || p <= 1.0) {
        throw DomainError("p must satisfy 1 < p < inf, got " + std::to_string(p));
    }
    log_norm_ = std::log(2.0) + std::log(p) / p + std::lgamma(1.0 + 1.0 / p);
    series_ = std::make_shared<const detail::MomentSeries>(p);
}

double log_density_fp(double y, const PExponent& p) {
    return -std::pow(std::abs(y), p.value()) / p.value() - p.log_normalizer();
}

double density_fp(double y, const PExponent& p) {
    return std::exp(log_density_fp(y, p));
}

double cdf_fp(double y, const PExponent& p) {
    const double pv = p.value();
    const double half_mass = 0.5 * boost::math::gamma_p(1.0 / pv, std::pow(std::abs(y), pv) / pv);
    return y >= 0.0 ? 0.5 + half_mass : 0.5 - half_mass;
}

double moment(int m, const PExponent& p) {
    if (m < 0) {
        throw DomainError("moment order must be nonnegative");
    }
    if (m % 2 == 1) {
        return 0.0;
    }
    return abs_moment(static_cast<double>(m), p);
}

double abs_moment(double r, const PExponent& p) {
    if (!(r > -1.0)) {
        throw DomainError("absolute moment order must exceed -1");
    }
    const double pv = p.value();
    return std::exp(r / pv * std::log(pv) + std::lgamma((r + 1.0) / pv) - std::lgamma(1.0 / pv));
}

LogMgf log_mgf(double t, const PExponent& p, MgfMethod method) {
    if (!std::isfinite(t)) {
        throw NonFinite("log_mgf: non-finite argument");
    }
    switch (method) {
    case MgfMethod::Series: {
        auto r = log_mgf_series(t, p);
        if (!r) {
            throw NoConvergence("log_mgf: moment series did not converge at t = " + std::to_string(t));
        }
        return *r;
    }
    case MgfMethod::Window:
        return log_mgf_window(t, p);
    case MgfMethod::Automatic:
        break;
    }
    if (std::pow(std::abs(t), p.conjugate()) <= kSeriesReach) {
        if (auto r = log_mgf_series(t, p)) {
            return *r;
        }
    }
    return log_mgf_window(t, p);
}

double mgf(double t, const PExponent& p, int order) {
    if (order < 0 || order > 2) {
        throw DomainError("mgf: order must be 0, 1 or 2");
    }
    const LogMgf k = log_mgf(t, p);
    const double m = std::exp(k.value);
    double out = m;
    if (order == 1) {
        out = m * k.d1;
    } else if (order == 2) {
        out = m * (k.d2 + k.d1 * k.d1);
    }
    if (!std::isfinite(out)) {
        throw NonFinite("mgf overflows at t = " + std::to_string(t));
    }
    return out;
}

namespace {

void check_domain(double t2, const PExponent& p) {
    if (!(t2 < 1.0 / p.value())) {
        throw DomainError("Lambda_p requires t2 < 1/p, got t2 = " + std::to_string(t2));
    }
}

}  // namespace

LambdaEval lambda_p(double t1, double t2, const PExponent& p) {
    check_domain(t2, p);
    const double pv = p.value();
    const double w = 1.0 - pv * t2;
    const double s = std::pow(w, -1.0 / pv);
    const double z = t1 * s;
    const LogMgf k = log_mgf(z, p);

    LambdaEval out;
    out.value = -std::log(w) / pv + k.value;
    out.grad(0) = k.d1 * s;
    out.grad(1) = (1.0 + k.d1 * z) / w;
    out.hess(0, 0) = k.d2 * s * s;
    out.hess(0, 1) = (k.d2 * z + k.d1) * s / w;
    out.hess(1, 0) = out.hess(0, 1);
    out.hess(1, 1) = (pv + k.d2 * z * z + (1.0 + pv) * k.d1 * z) / (w * w);
    return out;
}

double lambda_p_value(double t1, double t2, const PExponent& p) {
    check_domain(t2, p);
    const double pv = p.value();
    const double w = 1.0 - pv * t2;
    return -std::log(w) / pv + log_mgf(t1 * std::pow(w, -1.0 / pv), p).value;
}

}  // namespace lpsld
