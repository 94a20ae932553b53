#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lpsld/errors.hpp"

namespace lpsld {

inline constexpr int kDefaultHermiteOrder = 64;

/// Gauss-Hermite rule for the standard normal measure (probabilists'
/// convention): sum_i w_i f(x_i) approximates E[f(Z)], Z ~ N(0, 1), and the
/// weights sum to one. Nodes come from the Golub-Welsch eigenproblem of the
/// Jacobi matrix, polished by Newton steps on the orthonormal recurrence;
/// weights are the Christoffel numbers 1 / sum_k P_k(x_i)^2.
class GaussHermiteRule {
public:
    explicit GaussHermiteRule(int order);

    /// Shared immutable rule, built once per order (thread-safe).
    static const GaussHermiteRule& cached(int order = kDefaultHermiteOrder);

    [[nodiscard]] int order() const noexcept { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// sum_i w_i f(x_i). Throws NonFinite if f is not finite at some node.
template <class F>
double gaussian_integrate(F&& f, const GaussHermiteRule& rule) {
    const auto x = rule.nodes();
    const auto w = rule.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = f(x[i]);
        if (!std::isfinite(v)) {
            throw NonFinite("gaussian_integrate: integrand not finite at node " + std::to_string(x[i]));
        }
        sum += w[i] * v;
    }
    return sum;
}

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  ///< sum of the per-panel |Kronrod - Gauss| estimates
    int panels = 0;
};

/// Globally adaptive Gauss-Kronrod (G7/K15) integration on [lo, hi]: the
/// panel with the largest error estimate is bisected until the summed
/// estimate drops to `tol` (absolute). Throws NoConvergence when
/// `max_panels` is reached first.
QuadResult adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                              double tol, int max_panels = 4000);

/// Composite Gauss-Legendre rule on [lo, hi] with `panels` equal panels of
/// 20 nodes each. Used for smooth integrands where a fixed rule is enough.
double gauss_legendre(const std::function<double(double)>& f, double lo, double hi, int panels);

/// Nodes/weights of the composite Gauss-Legendre rule (for tensor products).
void gauss_legendre_nodes(double lo, double hi, int panels, std::vector<double>& x,
                          std::vector<double>& w);

}  // namespace lpsld
