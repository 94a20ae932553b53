#include "lpsld/dual.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lpsld/errors.hpp"

namespace lpsld {

PsiEval psi(const Eigen::Vector2d& s, const PExponent& p, const GaussHermiteRule& rule) {
    if (!(s(1) < 1.0 / p.value())) {
        throw DomainError("Psi_p requires s2 < 1/p");
    }
    const auto x = rule.nodes();
    const auto w = rule.weights();
    PsiEval out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = x[i];
        const LambdaEval l = lambda_p(u * s(0), s(1), p);
        out.value += w[i] * l.value;
        out.grad(0) += w[i] * u * l.grad(0);
        out.grad(1) += w[i] * l.grad(1);
        out.hess(0, 0) += w[i] * u * u * l.hess(0, 0);
        out.hess(0, 1) += w[i] * u * l.hess(0, 1);
        out.hess(1, 1) += w[i] * l.hess(1, 1);
    }
    out.hess(1, 0) = out.hess(0, 1);
    if (!std::isfinite(out.value) || !out.grad.allFinite() || !out.hess.allFinite()) {
        throw NonFinite("Psi_p not finite");
    }
    return out;
}

namespace {

std::optional<PsiEval> try_psi(const Eigen::Vector2d& s, const PExponent& p,
                               const GaussHermiteRule& rule) {
    if (!(s(1) < 1.0 / p.value()) || !s.allFinite()) {
        return std::nullopt;
    }
    try {
        return psi(s, p, rule);
    } catch (const NonFinite&) {
        return std::nullopt;
    }
}

LegendrePoint make_point(const Eigen::Vector2d& x, const Eigen::Vector2d& lambda, const PsiEval& ev) {
    LegendrePoint out;
    out.x = x;
    out.lambda = lambda;
    out.value = x.dot(lambda) - ev.value;
    out.hessian = ev.hess;
    out.residual = (ev.grad - x).norm();
    return out;
}

}  // namespace

std::optional<LegendrePoint> newton_legendre(const Eigen::Vector2d& x, const Eigen::Vector2d& start,
                                             const PExponent& p, const GaussHermiteRule& rule,
                                             const SolverOptions& opts) {
    Eigen::Vector2d lambda = start;
    auto ev = try_psi(lambda, p, rule);
    if (!ev) {
        return std::nullopt;
    }
    double res = (ev->grad - x).norm();
    for (int it = 0; it <= opts.max_newton_steps; ++it) {
        if (res < opts.residual_tol) {
            return make_point(x, lambda, *ev);
        }
        if (it == opts.max_newton_steps) {
            break;
        }
        const Eigen::Vector2d step = ev->hess.ldlt().solve(x - ev->grad);
        if (!step.allFinite()) {
            return std::nullopt;
        }
        bool accepted = false;
        for (double t = 1.0; t > 1e-12; t *= 0.5) {
            const Eigen::Vector2d cand = lambda + t * step;
            auto cev = try_psi(cand, p, rule);
            if (!cev) {
                continue;
            }
            const double cres = (cev->grad - x).norm();
            if (cres < res) {
                lambda = cand;
                ev = cev;
                res = cres;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

LegendrePoint legendre(const Eigen::Vector2d& x, const PExponent& p, const GaussHermiteRule& rule,
                       const SolverOptions& opts) {
    const Eigen::Vector2d origin(0.0, 1.0);
    const Eigen::Vector2d delta = x - origin;
    const double dist = delta.norm();
    if (!std::isfinite(dist)) {
        throw DomainError("legendre: non-finite target");
    }
    if (dist == 0.0) {
        auto pt = newton_legendre(x, Eigen::Vector2d::Zero(), p, rule, opts);
        if (!pt) {
            throw NoConvergence("legendre: Newton failed at the origin");
        }
        return *pt;
    }
    const int nodes = std::max(1, static_cast<int>(std::ceil(dist / opts.continuation_step)));
    double step = 1.0 / nodes;
    const double min_step = opts.min_continuation_step / dist;
    double done = 0.0;
    Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
    std::optional<LegendrePoint> last;
    while (done < 1.0) {
        const double next = std::min(1.0, done + step);
        const Eigen::Vector2d target = next >= 1.0 ? x : Eigen::Vector2d(origin + next * delta);
        auto pt = newton_legendre(target, lambda, p, rule, opts);
        if (pt) {
            lambda = pt->lambda;
            last = pt;
            done = next;
        } else {
            step *= 0.5;
            if (step < min_step) {
                throw DomainExceeded("legendre: continuation stalled, target outside the effective domain",
                                     done);
            }
        }
    }
    return *last;
}

DualPoint solve_dual(double a, const PExponent& p, int quad_order, const SolverOptions& opts) {
    if (!std::isfinite(a)) {
        throw DomainError("solve_dual: threshold must be finite");
    }
    const auto& rule = GaussHermiteRule::cached(quad_order);
    const double sign = a < 0.0 ? -1.0 : 1.0;
    const double target = std::abs(a);

    Eigen::Vector2d lambda = Eigen::Vector2d::Zero();
    std::optional<LegendrePoint> last;
    if (target == 0.0) {
        last = newton_legendre(Eigen::Vector2d(0.0, 1.0), lambda, p, rule, opts);
        if (!last) {
            throw NoConvergence("solve_dual: Newton failed at a = 0");
        }
    } else {
        const int nodes = std::max(1, static_cast<int>(std::ceil(target / opts.continuation_step)));
        double step = target / nodes;
        double done = 0.0;
        while (done < target) {
            const double next = std::min(target, done + step);
            auto pt = newton_legendre(Eigen::Vector2d(next, 1.0), lambda, p, rule, opts);
            if (pt) {
                lambda = pt->lambda;
                last = pt;
                done = next;
            } else {
                step *= 0.5;
                if (step < opts.min_continuation_step) {
                    throw DomainExceeded("solve_dual: (a, 1) appears to lie outside the effective domain; "
                                         "largest a reached = " + std::to_string(sign * done),
                                         sign * done);
                }
            }
        }
    }

    DualPoint dp{.a = a,
                 .p = p,
                 .lambda = Eigen::Vector2d(sign * last->lambda(0), last->lambda(1)),
                 .rate = std::max(0.0, last->value),
                 .hessian = last->hessian,
                 .residual = last->residual,
                 .quad_order = quad_order};
    // Reflecting lambda_1 flips the sign of the mixed partial.
    dp.hessian(0, 1) *= sign;
    dp.hessian(1, 0) *= sign;
    return dp;
}

std::vector<TauEntry> tau_scan(double a, const PExponent& p, const std::vector<double>& taus,
                               int quad_order) {
    const auto& rule = GaussHermiteRule::cached(quad_order);
    std::vector<TauEntry> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        if (!(tau > 0.0)) {
            throw DomainError("tau_scan: tau must be positive");
        }
        TauEntry e{.tau = tau, .value = std::nullopt, .status = "ok"};
        try {
            e.value = legendre(Eigen::Vector2d(tau * a, std::pow(tau, p.value())), p, rule).value;
        } catch (const DomainExceeded&) {
            e.status = "domain_exceeded";
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace lpsld
