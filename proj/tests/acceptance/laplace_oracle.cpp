#include "laplace_oracle.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "lpsld/errors.hpp"
#include "lpsld/quadrature.hpp"

namespace acceptance {

namespace {

using Eigen::Vector2d;
using lpsld::LegendrePoint;

struct Solver {
    const lpsld::DualPoint& dp;
    long failed = 0;

    // Newton from a neighbouring solution; on failure, a short continuation
    // along the segment from that neighbour.
    std::optional<LegendrePoint> at(const Vector2d& x, const LegendrePoint& from) {
        if (auto lp = lpsld::newton_legendre(x, from.lambda, dp.p, dp.rule())) {
            return lp;
        }
        LegendrePoint cur = from;
        constexpr int kSteps = 16;
        for (int k = 1; k <= kSteps; ++k) {
            const Vector2d xk = from.x + (x - from.x) * (static_cast<double>(k) / kSteps);
            auto lp = lpsld::newton_legendre(xk, cur.lambda, dp.p, dp.rule());
            if (!lp) {
                ++failed;
                return std::nullopt;
            }
            cur = *lp;
        }
        return cur;
    }
};

Vector2d point(const lpsld::DualPoint& dp, double y, double v) {
    return {v + dp.a * std::pow(y, 1.0 / dp.p.value()), y};
}

LegendrePoint anchor(const lpsld::DualPoint& dp) {
    LegendrePoint lp;
    lp.x = Vector2d(dp.a, 1.0);
    lp.lambda = dp.lambda;
    lp.value = dp.rate;
    lp.hessian = dp.hessian;
    return lp;
}

// walk from the dominating point in steps until n (Psi^* - I) passes the
// cutoff or the solver gives up; returns the offset reached
double walk(Solver& s, const lpsld::DualPoint& dp, int n, double cutoff, bool along_y, double dir,
            double step, double limit) {
    LegendrePoint cur = anchor(dp);
    double t = 0.0;
    while (true) {
        const double next = t + dir * step;
        if (std::abs(next) > limit) {
            return limit * dir;
        }
        const Vector2d x = along_y ? point(dp, 1.0 + next, 0.0) : point(dp, 1.0, next);
        const auto lp = s.at(x, cur);
        t = next;
        if (!lp || n * (lp->value - dp.rate) > cutoff) {
            return t;
        }
        cur = *lp;
    }
}

double tensor_integral(Solver& s, const lpsld::DualPoint& dp, int n, double cutoff, double y_lo, double y_hi,
                       double v_hi, int yp, int vp, long& nodes) {
    std::vector<double> yx, yw, vx, vw;
    lpsld::gauss_legendre_nodes(y_lo, y_hi, yp, yx, yw);
    lpsld::gauss_legendre_nodes(0.0, v_hi, vp, vx, vw);

    // rows are swept outwards from y = 1 so every row starts next to a solved one
    std::size_t mid = 0;
    while (mid + 1 < yx.size() && yx[mid + 1] <= 1.0) {
        ++mid;
    }
    std::vector<std::size_t> order;
    for (std::size_t i = mid + 1; i < yx.size(); ++i) {
        order.push_back(i);
    }
    for (std::size_t i = mid + 1; i-- > 0;) {
        order.push_back(i);
    }

    double total = 0.0;
    LegendrePoint up_start = anchor(dp);
    LegendrePoint down_start = anchor(dp);
    for (std::size_t i : order) {
        LegendrePoint& row_start = yx[i] > 1.0 ? up_start : down_start;
        LegendrePoint cur = row_start;
        double row = 0.0;
        for (std::size_t j = 0; j < vx.size(); ++j) {
            ++nodes;
            const auto lp = s.at(point(dp, yx[i], vx[j]), cur);
            if (!lp) {
                break;
            }
            if (j == 0) {
                row_start = *lp;
            }
            cur = *lp;
            const double e = n * (lp->value - dp.rate);
            row += vw[j] * std::exp(-e) / std::sqrt(lp->hessian.determinant());
            // Psi^* increases in v along a row (its x1-derivative is lambda_1 > 0)
            if (e > cutoff + 10.0) {
                break;
            }
        }
        total += yw[i] * row;
    }
    return total * n / (2.0 * std::numbers::pi);
}

}  // namespace

LaplaceIntegral boundary_laplace_integral(const lpsld::DualPoint& dp, int n, int y_panels, int v_panels,
                                          double cutoff) {
    Solver s{dp};
    LaplaceIntegral out;
    const double ystep = 0.25 / std::sqrt(static_cast<double>(n));
    out.y_hi = 1.0 + walk(s, dp, n, cutoff, true, 1.0, ystep, 10.0);
    out.y_lo = 1.0 + walk(s, dp, n, cutoff, true, -1.0, ystep, 1.0 - 1e-3);
    out.v_hi = walk(s, dp, n, cutoff, false, 1.0, 2.0 / (n * dp.lambda(0)), 10.0);
    out.value = tensor_integral(s, dp, n, cutoff, out.y_lo, out.y_hi, out.v_hi, y_panels, v_panels, out.nodes);
    out.refined = tensor_integral(s, dp, n, cutoff, out.y_lo, out.y_hi, out.v_hi, 2 * y_panels, 2 * v_panels,
                                  out.nodes);
    out.failed = s.failed;
    return out;
}

}  // namespace acceptance
