#include "lpsld/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lpsld {

namespace {

// Orthonormal Hermite polynomials P_0..P_{n-1} at x plus P_n and P_n'.
struct HermiteEval {
    double pn = 0.0;
    double dpn = 0.0;
    double sum_sq = 0.0;  // sum_{k<n} P_k(x)^2
};

HermiteEval hermite_eval(int n, double x) {
    double prev = 0.0;
    double cur = 1.0;
    double dprev = 0.0;
    double dcur = 0.0;
    HermiteEval out;
    for (int k = 0; k < n; ++k) {
        out.sum_sq += cur * cur;
        const double sk = std::sqrt(static_cast<double>(k));
        const double sk1 = std::sqrt(static_cast<double>(k + 1));
        const double next = (x * cur - sk * prev) / sk1;
        const double dnext = (cur + x * dcur - sk * dprev) / sk1;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    out.pn = cur;
    out.dpn = dcur;
    return out;
}

}  // namespace

GaussHermiteRule::GaussHermiteRule(int order) {
    if (order < 1 || order > 400) {
        throw DomainError("Gauss-Hermite order must lie in [1, 400]");
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 1; k < order; ++k) {
        sub(k - 1) = std::sqrt(static_cast<double>(k));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    nodes_.resize(order);
    weights_.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = solver.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            const HermiteEval h = hermite_eval(order, x);
            if (h.dpn == 0.0) {
                break;
            }
            x -= h.pn / h.dpn;
        }
        nodes_[i] = x;
    }
    // Symmetrize: the rule is exact for odd monomials only if x_i = -x_{n-1-i}.
    for (int i = 0; i < order / 2; ++i) {
        const double m = 0.5 * (nodes_[order - 1 - i] - nodes_[i]);
        nodes_[i] = -m;
        nodes_[order - 1 - i] = m;
    }
    if (order % 2 == 1) {
        nodes_[order / 2] = 0.0;
    }
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        weights_[i] = 1.0 / hermite_eval(order, nodes_[i]).sum_sq;
        total += weights_[i];
    }
    for (double& w : weights_) {
        w /= total;
    }
}

const GaussHermiteRule& GaussHermiteRule::cached(int order) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const GaussHermiteRule>> rules;
    std::lock_guard lock(mutex);
    auto& slot = rules[order];
    if (!slot) {
        slot = std::make_unique<const GaussHermiteRule>(order);
    }
    return *slot;
}

QuadResult adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                              double tol, int max_panels) {
    if (!(lo < hi)) {
        throw DomainError("adaptive_integrate: need lo < hi");
    }
    if (!(tol > 0.0)) {
        throw DomainError("adaptive_integrate: need tol > 0");
    }
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto apply = [&](double a, double b) {
        double err = 0.0;
        const double v = kronrod::integrate(f, a, b, 0, 0.0, &err);
        err *= 0.5 * (b - a);  // Boost reports the estimate on the [-1, 1] mapped panel
        if (!std::isfinite(v)) {
            throw NonFinite("adaptive_integrate: integrand not finite on panel");
        }
        return Panel{a, b, v, err};
    };

    std::priority_queue<Panel> queue;
    Panel first = apply(lo, hi);
    double total = first.value;
    double total_err = first.error;
    queue.push(first);
    int panels = 1;
    while (total_err > tol) {
        if (panels >= max_panels) {
            throw NoConvergence("adaptive_integrate: panel cap reached with error estimate " +
                                std::to_string(total_err));
        }
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw NoConvergence("adaptive_integrate: panel width underflow");
        }
        Panel left = apply(worst.a, mid);
        Panel right = apply(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    // Re-sum from the panels to drop the drift of the running updates.
    double value = 0.0;
    double error = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error, panels};
}

void gauss_legendre_nodes(double lo, double hi, int panels, std::vector<double>& x,
                          std::vector<double>& w) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& abs = rule::abscissa();
    const auto& wts = rule::weights();
    x.clear();
    w.clear();
    const double h = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) {
        const double mid = lo + (k + 0.5) * h;
        for (std::size_t j = 0; j < abs.size(); ++j) {
            x.push_back(mid - 0.5 * h * abs[j]);
            w.push_back(0.5 * h * wts[j]);
            x.push_back(mid + 0.5 * h * abs[j]);
            w.push_back(0.5 * h * wts[j]);
        }
    }
}

double gauss_legendre(const std::function<double(double)>& f, double lo, double hi, int panels) {
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre_nodes(lo, hi, panels, x, w);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += w[i] * f(x[i]);
    }
    return sum;
}

}  // namespace lpsld
