#include "lpsld/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/roots.hpp>

#include "lpsld/errors.hpp"
#include "lpsld/parallel.hpp"
#include "lpsld/quadrature.hpp"

namespace lpsld {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr double kMaxLogWeight = 700.0;

void check_direction(const Direction& theta) {
    if (theta.n < 1 || static_cast<int>(theta.theta.size()) != theta.n) {
        throw DomainError("direction has inconsistent dimension");
    }
}

// Reformulated event plus the W > a form; they must agree unless the sample
// sits on the boundary to rounding.
bool event_hit(const std::vector<double>& theta, const std::vector<double>& y, double a, double p) {
    const double n = static_cast<double>(y.size());
    double dot = 0.0;
    double energy = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        dot += theta[j] * y[j];
        energy += std::pow(std::abs(y[j]), p);
    }
    const double lhs = dot / std::sqrt(n);
    const double rhs = a * std::pow(energy / n, 1.0 / p);
    const bool hit = lhs > rhs;

    const double w = std::pow(n, 1.0 / p - 0.5) * dot / std::pow(energy, 1.0 / p);
    const bool hit_w = w > a;
    if (hit != hit_w && std::abs(lhs - rhs) > 1e-12 * (std::abs(lhs) + std::abs(rhs))) {
        throw std::logic_error("event forms disagree away from the boundary");
    }
    return hit;
}

}  // namespace

const char* to_string(EstimatorKind k) {
    switch (k) {
    case EstimatorKind::MC: return "MC";
    case EstimatorKind::IS: return "IS";
    case EstimatorKind::Oracle: return "ORACLE";
    }
    return "?";
}

TailEstimate summarize(const std::vector<double>& values, EstimatorKind kind, std::uint64_t seed,
                       std::uint64_t dropped) {
    TailEstimate est;
    est.kind = kind;
    est.seed = seed;
    est.dropped = dropped;
    est.reps = static_cast<std::int64_t>(values.size());
    if (values.empty()) {
        est.log_mean = -std::numeric_limits<double>::infinity();
        return est;
    }
    const double count = static_cast<double>(values.size());
    est.mean = compensated_sum(values) / count;
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double d = values[i] - est.mean;
            sq[i] = d * d;
        }
        est.sd = std::sqrt(compensated_sum(sq) / (count - 1.0));
    }
    const double se = est.sd / std::sqrt(count);
    est.ci_low = est.mean - kZ95 * se;
    est.ci_high = est.mean + kZ95 * se;
    if (est.mean > 0.0) {
        est.ci_low_log = est.mean * std::exp(-kZ95 * se / est.mean);
        est.ci_high_log = est.mean * std::exp(kZ95 * se / est.mean);
        est.log_mean = std::log(est.mean);
    } else {
        est.log_mean = -std::numeric_limits<double>::infinity();
    }
    return est;
}

std::vector<double> mc_samples(const PExponent& p, double a, const Direction& theta, std::int64_t reps,
                               std::uint64_t seed, const RunOptions& opts) {
    check_direction(theta);
    if (reps < 1) {
        throw DomainError("reps must be at least 1");
    }
    std::vector<double> out(static_cast<std::size_t>(reps));
    parallel_for(out.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> y(theta.n);
        for (std::size_t r = begin; r < end; ++r) {
            CounterRng rng(seed, stream_id(StreamPurpose::Replication, r));
            for (double& v : y) {
                v = sample_pgauss(p, rng);
            }
            out[r] = event_hit(theta.theta, y, a, p.value()) ? 1.0 : 0.0;
        }
    });
    return out;
}

TailEstimate mc_tail(const PExponent& p, double a, const Direction& theta, std::int64_t reps,
                     std::uint64_t seed, const RunOptions& opts) {
    return summarize(mc_samples(p, a, theta, reps, seed, opts), EstimatorKind::MC, seed);
}

ImportanceSamples is_samples(const PExponent& p, double a, const Eigen::Vector2d& lambda,
                             const Direction& theta, std::int64_t reps, std::uint64_t seed,
                             const RunOptions& opts) {
    check_direction(theta);
    if (reps < 1) {
        throw DomainError("reps must be at least 1");
    }
    const int n = theta.n;
    const double pv = p.value();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double l2 = lambda(1);

    // One table per distinct tilt coefficient b_j.
    std::vector<double> b(n);
    std::map<double, std::size_t> index;
    std::vector<double> distinct;
    for (int j = 0; j < n; ++j) {
        b[j] = sqrt_n * theta.theta[j] * lambda(0);
        if (index.emplace(b[j], distinct.size()).second) {
            distinct.push_back(b[j]);
        }
    }
    std::vector<std::unique_ptr<TiltedSamplerTable>> built(distinct.size());
    parallel_for(distinct.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            built[i] = std::make_unique<TiltedSamplerTable>(distinct[i], l2, p);
        }
    }, 1);
    std::vector<const TiltedSamplerTable*> table(n);
    for (int j = 0; j < n; ++j) {
        table[j] = built[index.at(b[j])].get();
    }

    const auto count = static_cast<std::size_t>(reps);
    std::vector<double> value(count);
    std::vector<double> logw(count);
    std::vector<char> hit(count);
    std::vector<char> keep(count, 1);
    parallel_for(count, opts.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> y(n);
        for (std::size_t r = begin; r < end; ++r) {
            CounterRng rng(seed, stream_id(StreamPurpose::Replication, r));
            double lw = 0.0;
            for (int j = 0; j < n; ++j) {
                const double v = table[j]->sample(rng);
                y[j] = v;
                lw += -b[j] * v - l2 * std::pow(std::abs(v), pv) + table[j]->log_norm();
            }
            logw[r] = lw;
            if (lw > kMaxLogWeight) {
                keep[r] = 0;
                continue;
            }
            hit[r] = event_hit(theta.theta, y, a, pv) ? 1 : 0;
            value[r] = hit[r] ? std::exp(lw) : 0.0;
        }
    });

    ImportanceSamples out;
    out.values.reserve(count);
    out.log_weights.reserve(count);
    out.hits.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
        if (!keep[r]) {
            ++out.dropped;
            continue;
        }
        out.values.push_back(value[r]);
        out.log_weights.push_back(logw[r]);
        out.hits.push_back(hit[r]);
    }
    for (const auto& t : built) {
        out.clamped += t->clamped();
    }
    return out;
}

TailEstimate is_tail(const DualPoint& dp, const Direction& theta, std::int64_t reps, std::uint64_t seed,
                     const RunOptions& opts) {
    const ImportanceSamples s = is_samples(dp.p, dp.a, dp.lambda, theta, reps, seed, opts);
    return summarize(s.values, EstimatorKind::IS, seed, s.dropped);
}

double brute_tail(const PExponent& p, double a, const Eigen::Vector2d& theta, double tol) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw DomainError("brute_tail needs a finite a >= 0");
    }
    if (std::abs(theta.norm() - 1.0) > 1e-12) {
        throw DomainError("brute_tail needs a unit direction");
    }
    const double pv = p.value();
    // Relabel so that theta_1 >= |theta_2|; gamma_p is even and the
    // coordinates are exchangeable.
    double t1 = theta(0);
    double t2 = theta(1);
    if (std::abs(t1) < std::abs(t2)) {
        std::swap(t1, t2);
    }
    t1 = std::abs(t1);
    const double c = t1 / std::sqrt(2.0);
    const double d = t2 / std::sqrt(2.0);
    const double k = a * std::pow(0.5, 1.0 / pv);

    auto pnorm = [pv](double u, double v) {
        const double m = std::max(std::abs(u), std::abs(v));
        if (m == 0.0) {
            return 0.0;
        }
        const double r = std::min(std::abs(u), std::abs(v)) / m;
        return m * std::pow(1.0 + std::pow(r, pv), 1.0 / pv);
    };
    // P(Y > r), accurate in the upper tail.
    auto survival = [pv](double r) {
        if (r >= 0.0) {
            return 0.5 * boost::math::gamma_q(1.0 / pv, std::pow(r, pv) / pv);
        }
        return 1.0 - 0.5 * boost::math::gamma_q(1.0 / pv, std::pow(-r, pv) / pv);
    };
    auto between = [&](double r1, double r2) {
        if (r1 >= 0.0) {
            return survival(r1) - survival(r2);
        }
        if (r2 <= 0.0) {
            return survival(-r2) - survival(-r1);
        }
        return 1.0 - survival(-r1) - survival(r2);
    };

    boost::math::tools::eps_tolerance<double> root_tol(50);
    auto solve = [&](const auto& h, double lo, double hi) {
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve(h, lo, hi, h(lo), h(hi), root_tol, iters);
        return 0.5 * (r.first + r.second);
    };
    // Walk from `from` in direction dir until h changes sign.
    auto bracket = [](const auto& h, double from, double dir, double scale) {
        double step = scale;
        double x = from + dir * step;
        const bool positive = h(from) > 0.0;
        for (int i = 0; i < 200 && (h(x) > 0.0) == positive; ++i) {
            step *= 2.0;
            x = from + dir * step;
        }
        return x;
    };

    // h(y1, y2) = c y1 + d y2 - k ||(y1, y2)||_p is homogeneous of degree one,
    // so for y2 = s |y2| the roots are |y2| times the roots at y2 = s.
    struct Unit {
        enum Kind { None, All, HalfLine, Interval } kind = None;
        double r1 = 0.0, r2 = 0.0;
    };
    auto unit = [&](double s) {
        auto h = [&](double y1) { return c * y1 + d * s - k * pnorm(y1, s); };
        Unit u;
        if (c >= k) {
            // h is nondecreasing: the event is a half-line (r1, inf).
            const double far = 1e9;
            if (!(h(far) > 0.0)) {
                return u;
            }
            const double lo = bracket(h, far, -1.0, 1.0);
            if (h(lo) > 0.0) {
                u.kind = Unit::All;
                return u;
            }
            u.kind = Unit::HalfLine;
            u.r1 = solve(h, lo, far);
            return u;
        }
        // Stationary point: sign(y1) (|y1| / ||(y1, y2)||_p)^{p-1} = c / k.
        const double rho = std::pow(c / k, 1.0 / (pv - 1.0));
        const double y_star = rho / std::pow(1.0 - std::pow(rho, pv), 1.0 / pv);
        if (!(h(y_star) > 0.0)) {
            return u;
        }
        const double width = std::max(1.0, y_star);
        u.kind = Unit::Interval;
        u.r1 = solve(h, bracket(h, y_star, -1.0, width), y_star);
        u.r2 = solve(h, y_star, bracket(h, y_star, +1.0, width));
        return u;
    };
    const Unit neg = unit(-1.0);
    const Unit pos = unit(+1.0);
    auto inner = [&](double y2) -> double {
        const Unit& u = y2 < 0.0 ? neg : pos;
        const double m = std::abs(y2);
        switch (u.kind) {
        case Unit::None: return 0.0;
        case Unit::All: return 1.0;
        case Unit::HalfLine: return survival(m * u.r1);
        case Unit::Interval: return between(m * u.r1, m * u.r2);
        }
        return 0.0;
    };

    // inner(y2) varies on the scale 1 / |root|, which can be tiny next to
    // the density's scale; geometric cuts towards 0 let the adaptive rule see it
    const double reach = std::pow(pv * 60.0, 1.0 / pv);
    auto integrand = [&](double y2) { return density_fp(y2, p) * inner(y2); };
    constexpr int kCuts = 40;
    const double piece_tol = 0.5 * tol / (kCuts + 1);
    double total = 0.0;
    for (double sgn : {-1.0, 1.0}) {
        double outer = reach;
        for (int j = 0; j < kCuts; ++j) {
            const double in = 0.5 * outer;
            total += adaptive_integrate(integrand, std::min(sgn * in, sgn * outer), std::max(sgn * in, sgn * outer),
                                        piece_tol, 20000)
                         .value;
            outer = in;
        }
        total += adaptive_integrate(integrand, std::min(0.0, sgn * outer), std::max(0.0, sgn * outer), piece_tol,
                                    20000)
                     .value;
    }
    return total;
}

std::optional<double> relative_distance(double sld, double is_mean) {
    if (!(is_mean > 0.0) || !std::isfinite(is_mean) || !std::isfinite(sld)) {
        return std::nullopt;
    }
    return (sld - is_mean) * 100.0 / is_mean;
}

}  // namespace lpsld
