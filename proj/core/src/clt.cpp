#include "lpsld/clt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "lpsld/errors.hpp"

namespace lpsld {

TiltedFunctions tilted_functions(const DualPoint& dp, double x) {
    const double l1 = dp.lambda(0);
    const double l2 = dp.lambda(1);
    const LambdaEval e = lambda_p(x * l1, l2, dp.p);
    TiltedFunctions f;
    f.l = e.value;
    f.dl = l1 * e.grad(0);
    f.d2l = l1 * l1 * e.hess(0, 0);
    f.l1 = x * e.grad(0);
    f.dl1 = e.grad(0) + x * l1 * e.hess(0, 0);
    f.l2 = e.grad(1);
    f.dl2 = l1 * e.hess(0, 1);
    return f;
}

double CltCovariance::limit_var_r() const {
    const double k = limit.e_dl_z;
    return sigma(0, 0) - k * sigma(0, 1) + 0.25 * k * k * sigma(1, 1);
}

CltCovariance sigma_a(const DualPoint& dp, const GaussHermiteRule& rule) {
    const auto x = rule.nodes();
    const auto w = rule.weights();
    Eigen::Vector4d m1 = Eigen::Vector4d::Zero();
    Eigen::Matrix4d m2 = Eigen::Matrix4d::Zero();
    LimitConstants lc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const TiltedFunctions f = tilted_functions(dp, x[i]);
        const Eigen::Vector4d v(f.l, x[i] * x[i], f.l1, f.l2);
        if (!v.allFinite()) {
            throw NonFinite("sigma_a: tilted functions not finite at a quadrature node");
        }
        m1 += w[i] * v;
        m2 += w[i] * (v * v.transpose());
        lc.e_dl_z += w[i] * f.dl * x[i];
        lc.e_d2l_z2 += w[i] * f.d2l * x[i] * x[i];
        lc.e_dl1_z += w[i] * f.dl1 * x[i];
        lc.e_dl2_z += w[i] * f.dl2 * x[i];
    }
    CltCovariance out;
    out.mean = m1;
    out.sigma = m2 - m1 * m1.transpose();
    out.sigma = 0.5 * (out.sigma + out.sigma.transpose()).eval();
    out.limit = lc;
    return out;
}

CltCovariance sigma_a(const DualPoint& dp) {
    return sigma_a(dp, dp.rule());
}

FluctDraw fluct_from_normals(const DualPoint& dp, const CltCovariance& cov, const Eigen::VectorXd& z) {
    const auto n = z.size();
    if (n < 2) {
        throw DomainError("fluct_sample needs n >= 2");
    }
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double scale = sqrt_n / z.norm();
    double r = 0.0;
    double s = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double zj = z(j);
        const double delta = (scale - 1.0) * zj;  // sqrt(n) z_j / ||z|| - z_j
        const TiltedFunctions f = tilted_functions(dp, zj);
        r += f.l - cov.mean(0) + f.dl * delta;
        t1 += f.l1 - cov.mean(2) + f.dl1 * delta;
        t2 += f.l2 - cov.mean(3) + f.dl2 * delta;
        s += 0.5 * f.d2l * delta * delta;
    }
    FluctDraw out;
    out.r = r / sqrt_n;
    out.t1 = t1 / sqrt_n;
    out.t2 = t2 / sqrt_n;
    out.s = s;
    const Eigen::Vector2d t(out.t1, out.t2);
    out.log_m = out.s + t.dot(dp.hessian.ldlt().solve(t));
    out.m = std::exp(out.log_m);
    return out;
}

FluctDraw fluct_sample(const DualPoint& dp, const CltCovariance& cov, int n, CounterRng& rng) {
    if (n < 2) {
        throw DomainError("fluct_sample needs n >= 2");
    }
    std::normal_distribution<double> normal;
    Eigen::VectorXd z(n);
    for (int j = 0; j < n; ++j) {
        z(j) = normal(rng);
    }
    return fluct_from_normals(dp, cov, z);
}

LimitSampler::LimitSampler(const CltCovariance& cov, const DualPoint& dp)
    : limit_(cov.limit), root_(Eigen::Matrix4d::Zero()), hinv_(dp.hessian.inverse()) {
    const Eigen::LLT<Eigen::Matrix4d> llt(cov.sigma);
    if (llt.info() == Eigen::Success) {
        root_ = llt.matrixL();
        cholesky_ = true;
        return;
    }
    cholesky_ = false;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(cov.sigma);
    const Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    root_ = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

LimitDraw LimitSampler::assemble(const Eigen::Vector4d& v) const {
    LimitDraw out;
    const double d = v(1);
    out.R = v(0) - 0.5 * limit_.e_dl_z * d;
    out.S = limit_.e_d2l_z2 * d * d / 8.0;
    out.T1 = v(2) - 0.5 * limit_.e_dl1_z * d;
    out.T2 = v(3) - 0.5 * limit_.e_dl2_z * d;
    const Eigen::Vector2d t(out.T1, out.T2);
    out.log_m = out.S + t.dot(hinv_ * t);
    out.M = std::exp(out.log_m);
    return out;
}

LimitDraw LimitSampler::draw(CounterRng& rng) const {
    std::normal_distribution<double> normal;
    Eigen::Vector4d g;
    for (int i = 0; i < 4; ++i) {
        g(i) = normal(rng);
    }
    return assemble(root_ * g);
}

LimitDraw limit_sample(const CltCovariance& cov, const DualPoint& dp, CounterRng& rng) {
    return LimitSampler(cov, dp).draw(rng);
}

double ks_two_sample(std::vector<double> x, std::vector<double> y) {
    if (x.empty() || y.empty()) {
        throw DomainError("ks_two_sample: empty sample");
    }
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) {
            ++i;
        }
        while (j < y.size() && y[j] <= v) {
            ++j;
        }
        d = std::max(d, std::abs(i / nx - j / ny));
    }
    return d;
}

}  // namespace lpsld
