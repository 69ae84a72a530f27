#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace scatdeco {

// Gauss-Laguerre rule for  int_0^inf e^{-x} f(x) dx ~ sum_i w_i f(x_i).
// Weights are stored as logarithms; for large rules most of them are far
// below the smallest double.
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> log_weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

// Cached, thread-safe. Nodes from the eigenvalues of the Jacobi matrix,
// polished by Newton iteration on L_n.
const GaussLaguerreRule& gauss_laguerre(std::size_t n);

struct QuadratureResult {
    double value;
    std::size_t nodes;       // size of the rule that produced value
    double relative_change;  // |I_N - I_{N/2}| / max(|I_N|, scale)
};

inline constexpr std::size_t kDefaultNodes = 200;
inline constexpr std::size_t kMaxNodes = 1600;
inline constexpr double kQuadratureTolerance = 1e-10;

// sum_i w_i f(x_i), skipping nodes whose weight underflows.
template <class F>
double integrate(const GaussLaguerreRule& rule, F&& f) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (rule.log_weights[i] < -745.0) continue;
        const double term = std::exp(rule.log_weights[i]) * f(rule.nodes[i]);
        // Neumaier summation
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// Doubles the rule from kDefaultNodes until successive estimates agree to
// kQuadratureTolerance relative to max(|I|, scale). Throws NumericalError
// past kMaxNodes.
template <class F>
QuadratureResult integrate_converged(F&& f, double scale = 0.0);

} // namespace scatdeco

#include "scatdeco/errors.hpp"

namespace scatdeco {

template <class F>
QuadratureResult integrate_converged(F&& f, double scale) {
    double previous = integrate(gauss_laguerre(kDefaultNodes), f);
    double change = 0.0;
    for (std::size_t n = 2 * kDefaultNodes; n <= kMaxNodes; n *= 2) {
        const double current = integrate(gauss_laguerre(n), f);
        const double denom = std::max({std::abs(current), std::abs(previous), scale});
        change = denom > 0.0 ? std::abs(current - previous) / denom : 0.0;
        if (change < kQuadratureTolerance) return {current, n, change};
        previous = current;
    }
    throw NumericalError("Gauss-Laguerre quadrature did not converge up to " +
                             std::to_string(kMaxNodes) + " nodes",
                         change);
}

} // namespace scatdeco
