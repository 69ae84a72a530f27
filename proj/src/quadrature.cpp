#include "scatdeco/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace scatdeco {

namespace {

// log|L_n(x)| and sign, alpha = 0, plus L_n / L_{n-1} for Newton steps.
// Rescales as it goes so large x never overflows.
struct ScaledLaguerre {
    double log_abs;
    double sign;
    double ratio_prev; // L_{n-1}(x) / L_n(x)
};

ScaledLaguerre scaled_laguerre(std::size_t n, double x) {
    double prev = 1.0;
    double curr = 1.0 - x;
    double log_scale = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
        const double kk = double(k);
        const double next = ((2.0 * kk - 1.0 - x) * curr - (kk - 1.0) * prev) / kk;
        prev = curr;
        curr = next;
        const double mag = std::abs(curr);
        if (mag > 1e150) {
            prev /= mag;
            curr /= mag;
            log_scale += std::log(mag);
        }
    }
    return {log_scale + std::log(std::abs(curr)), curr < 0.0 ? -1.0 : 1.0, prev / curr};
}

GaussLaguerreRule build_rule(std::size_t n) {
    // Jacobi matrix: diagonal 2k+1, off-diagonal k+1 (k = 0..n-1).
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 0 ? n - 1 : 0);
    for (std::size_t k = 0; k < n; ++k) diag[Eigen::Index(k)] = 2.0 * double(k) + 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) sub[Eigen::Index(k)] = double(k) + 1.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.log_weights.resize(n);
    const double nn = double(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = solver.eigenvalues()[Eigen::Index(i)];
        // Newton polish: x L_n' = n (L_n - L_{n-1})  =>  L_n / L_n' = x / (n (1 - r)).
        for (int iter = 0; iter < 8; ++iter) {
            const auto s = scaled_laguerre(n, x);
            const double step = x / (nn * (1.0 - s.ratio_prev));
            x -= step;
            if (std::abs(step) <= 1e-16 * x) break;
        }
        rule.nodes[i] = x;
        // w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2)
        const auto s1 = scaled_laguerre(n + 1, x);
        rule.log_weights[i] = std::log(x) - 2.0 * std::log(nn + 1.0) - 2.0 * s1.log_abs;
    }
    return rule;
}

} // namespace

const GaussLaguerreRule& gauss_laguerre(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussLaguerreRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLaguerreRule>(build_rule(n));
    return *slot;
}

} // namespace scatdeco
