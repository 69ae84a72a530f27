#include "scatdeco/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "scatdeco/errors.hpp"

namespace scatdeco {

namespace {

void check_order(int n, int alpha) {
    if (n < 0) throw DomainError("laguerre: degree must be >= 0, got " + std::to_string(n));
    if (alpha < -1) throw DomainError("laguerre: alpha must be >= -1, got " + std::to_string(alpha));
}

constexpr int kLogFactorialTable = 256;

const std::array<double, kLogFactorialTable + 1>& log_factorial_table() {
    static const auto table = [] {
        std::array<double, kLogFactorialTable + 1> t{};
        t[0] = 0.0;
        for (int k = 1; k <= kLogFactorialTable; ++k) t[k] = t[k - 1] + std::log(double(k));
        return t;
    }();
    return table;
}

} // namespace

double laguerre(int n, int alpha, double x) {
    check_order(n, alpha);
    if (n == 0) return 1.0;
    double prev = 1.0;
    double curr = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0 + alpha - x) * curr - (k - 1.0 + alpha) * prev) / k;
        prev = curr;
        curr = next;
    }
    return curr;
}

void laguerre_sequence(int alpha, double x, std::span<double> out) {
    if (out.empty()) return;
    check_order(int(out.size()) - 1, alpha);
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = 1.0 + alpha - x;
    for (std::size_t k = 2; k < out.size(); ++k) {
        const double kk = double(k);
        out[k] = ((2.0 * kk - 1.0 + alpha - x) * out[k - 1] - (kk - 1.0 + alpha) * out[k - 2]) / kk;
    }
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial: n must be >= 0");
    const auto& table = log_factorial_table();
    if (n <= kLogFactorialTable) return table[n];
    double s = table[kLogFactorialTable];
    for (int k = kLogFactorialTable + 1; k <= n; ++k) s += std::log(double(k));
    return s;
}

double log_factorial_ratio(int m, int n0) {
    if (m < 1) throw DomainError("log_factorial_ratio: m must be >= 1");
    if (m > n0)
        throw DomainError("log_factorial_ratio: m = " + std::to_string(m) + " exceeds n0 = " +
                          std::to_string(n0));
    // ln(m/n0) - sum_{k=m+1}^{n0} ln k: only the factors that differ.
    double s = std::log(double(m)) - std::log(double(n0));
    for (int k = m + 1; k <= n0; ++k) s -= std::log(double(k));
    return s;
}

double hydrogenic_radial(int n, double k, double r) {
    if (n < 1) throw DomainError("hydrogenic_radial: n must be >= 1");
    if (!(k > 0.0)) throw DomainError("hydrogenic_radial: k must be positive");
    if (r < 0.0) throw DomainError("hydrogenic_radial: r must be >= 0");
    const double x = k * r;
    const double prefactor = -std::pow(k, 1.5) / (std::numbers::sqrt2 * n);
    return prefactor * std::exp(-0.5 * x) * laguerre(n - 1, 1, x);
}

} // namespace scatdeco
