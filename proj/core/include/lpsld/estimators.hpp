#pragma once

// Tail estimators for P_theta(W > a), W = n^{1/p - 1/2} sum_j theta_j X_j with
// X uniform (cone measure) on the l_p^n sphere. Both the MC and IS
// estimators test the event in the reformulated form
//   (1/n) sum_j sqrt(n) theta_j Y_j > a ((1/n) sum_j |Y_j|^p)^{1/p},  Y_j ~ gamma_p
// and cross-check it against W > a computed from Y / ||Y||_p.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "lpsld/dual.hpp"
#include "lpsld/sampling.hpp"

namespace lpsld {

enum class EstimatorKind { MC, IS, Oracle };

[[nodiscard]] const char* to_string(EstimatorKind k);

struct TailEstimate {
    EstimatorKind kind = EstimatorKind::MC;
    double mean = 0.0;
    double sd = 0.0;        ///< sample standard deviation of the per-replication values
    double ci_low = 0.0;    ///< mean - 1.96 sd / sqrt(reps)
    double ci_high = 0.0;   ///< mean + 1.96 sd / sqrt(reps)
    double ci_low_log = 0.0;   ///< mean * exp(-1.96 se / mean)
    double ci_high_log = 0.0;  ///< mean * exp(+1.96 se / mean)
    double log_mean = 0.0;  ///< log(mean), -inf when mean == 0
    std::int64_t reps = 0;  ///< replications that entered the mean
    std::uint64_t seed = 0;
    std::uint64_t dropped = 0;  ///< IS replications dropped for log-weight > 700

    [[nodiscard]] bool degenerate_ci() const noexcept { return reps < 2; }
};

/// Mean, sample SD and both CI variants of the per-replication values.
[[nodiscard]] TailEstimate summarize(const std::vector<double>& values, EstimatorKind kind,
                                     std::uint64_t seed, std::uint64_t dropped = 0);

struct RunOptions {
    int threads = 1;
};

/// Per-replication indicators of naive Monte Carlo. Replication r uses the
/// stream (Replication, r) under `seed`.
[[nodiscard]] std::vector<double> mc_samples(const PExponent& p, double a, const Direction& theta,
                                             std::int64_t reps, std::uint64_t seed,
                                             const RunOptions& opts = {});

[[nodiscard]] TailEstimate mc_tail(const PExponent& p, double a, const Direction& theta,
                                   std::int64_t reps, std::uint64_t seed, const RunOptions& opts = {});

struct ImportanceSamples {
    std::vector<double> values;      ///< indicator * likelihood ratio, per kept replication
    std::vector<double> log_weights; ///< log likelihood ratio, per kept replication
    std::vector<char> hits;          ///< indicator, per kept replication
    std::uint64_t dropped = 0;
    std::uint64_t clamped = 0;       ///< table lookups clamped to the bracket
};

/// Importance sampling with per-coordinate tilt exp(lambda1 sqrt(n) theta_j y
/// + lambda2 |y|^p). With lambda = (0, 0) the draws coincide with
/// mc_samples on the same seed.
[[nodiscard]] ImportanceSamples is_samples(const PExponent& p, double a, const Eigen::Vector2d& lambda,
                                           const Direction& theta, std::int64_t reps,
                                           std::uint64_t seed, const RunOptions& opts = {});

/// IS at the optimal tilt lambda_a of the dual point.
[[nodiscard]] TailEstimate is_tail(const DualPoint& dp, const Direction& theta, std::int64_t reps,
                                   std::uint64_t seed, const RunOptions& opts = {});

/// n = 2 oracle: P(Y . theta / sqrt(2) > a ((|Y_1|^p + |Y_2|^p) / 2)^{1/p}) by
/// an exact inner interval probability in y_1 and adaptive quadrature in y_2.
/// Needs a >= 0 and a unit 2-vector theta.
[[nodiscard]] double brute_tail(const PExponent& p, double a, const Eigen::Vector2d& theta,
                                double tol = 1e-10);

/// (sld - is) * 100 / is, empty when is_mean is not positive and finite.
[[nodiscard]] std::optional<double> relative_distance(double sld, double is_mean);

}  // namespace lpsld
