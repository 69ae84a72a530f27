#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/oracle.hpp"
#include "scatdeco/quadrature.hpp"
#include "scatdeco/special_functions.hpp"

using namespace scatdeco;

TEST_CASE("laguerre low orders") {
    for (double x : {0.0, 0.3, 2.0, 17.5}) {
        CHECK(laguerre(0, 1, x) == 1.0);
        CHECK(laguerre(1, 1, x) == doctest::Approx(2.0 - x));
        CHECK(laguerre(2, 1, x) == doctest::Approx(3.0 - 3.0 * x + 0.5 * x * x));
        CHECK(laguerre(1, -1, x) == doctest::Approx(-x));
        CHECK(laguerre(2, -1, x) == doctest::Approx(-x + 0.5 * x * x));
    }
}

TEST_CASE("laguerre at the origin") {
    CHECK(laguerre(0, -1, 0.0) == 1.0);
    for (int n = 1; n <= 40; ++n) {
        CHECK(laguerre(n, -1, 0.0) == 0.0);
        CHECK(laguerre(n, 1, 0.0) == doctest::Approx(n + 1.0));
    }
}

TEST_CASE("laguerre domain errors") {
    CHECK_THROWS_AS(laguerre(-1, 1, 1.0), DomainError);
    CHECK_THROWS_AS(laguerre(3, -2, 1.0), DomainError);
    std::vector<double> out(4);
    CHECK_THROWS_AS(laguerre_sequence(-3, 1.0, out), DomainError);
}

TEST_CASE("sequence agrees with single evaluations") {
    std::vector<double> out(30);
    laguerre_sequence(-1, 3.7, out);
    for (int n = 0; n < 30; ++n) CHECK(out[std::size_t(n)] == doctest::Approx(laguerre(n, -1, 3.7)));
    std::vector<double> empty;
    laguerre_sequence(1, 1.0, empty);
}

TEST_CASE("property: recurrence matches the extended-precision power sum") {
    gen::Source src;
    for (int i = 0; i < gen::kCases; ++i) {
        const int n = src.integer(0, 25);
        const int alpha = src.coin() ? 1 : -1;
        const double x = src.uniform(0.0, 30.0);
        const double ref = oracle::laguerre_explicit(n, alpha, x);
        INFO("n=", n, " alpha=", alpha, " x=", x);
        CHECK(std::abs(laguerre(n, alpha, x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("log factorial") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)));
    CHECK(log_factorial(200) == doctest::Approx(std::lgamma(201.0)).epsilon(1e-14));
    CHECK(log_factorial(400) == doctest::Approx(std::lgamma(401.0)).epsilon(1e-14));
}

TEST_CASE("log factorial ratio against big integers") {
    for (int n0 = 1; n0 <= 120; n0 += 7)
        for (int m = 1; m <= n0; m += 3)
            CHECK(std::abs(log_factorial_ratio(m, n0) - oracle::log_factorial_ratio_exact(m, n0)) <
                  1e-12 * std::max(1.0, std::abs(oracle::log_factorial_ratio_exact(m, n0))));
    CHECK(log_factorial_ratio(7, 7) == 0.0);
    CHECK_THROWS_AS(log_factorial_ratio(8, 7), DomainError);
    CHECK_THROWS_AS(log_factorial_ratio(0, 7), DomainError);
}

TEST_CASE("hydrogenic radial functions are normalized") {
    // k = 1: int R_n^2 r^2 dr = int e^{-x} x^2 (L_{n-1}^1)^2 / (2 n^2) dx
    const auto& rule = gauss_laguerre(200);
    for (int n = 1; n <= 30; ++n) {
        const double norm = integrate(rule, [&](double x) {
            const double r = hydrogenic_radial(n, 1.0, x) * std::exp(0.5 * x);
            return r * r * x * x;
        });
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("same-scale radial functions are orthogonal with weight r") {
    const auto& rule = gauss_laguerre(200);
    for (int m = 1; m <= 12; ++m)
        for (int n = m + 1; n <= 12; ++n) {
            const double overlap = integrate(rule, [&](double x) {
                return x * laguerre(m - 1, 1, x) * laguerre(n - 1, 1, x);
            });
            CHECK(std::abs(overlap) < 1e-9 * n * m);
        }
}

TEST_CASE("hydrogen ground state at the origin") {
    const double k = 2.0;
    CHECK(hydrogenic_radial(1, k, 0.0) == doctest::Approx(-std::pow(k, 1.5) / std::sqrt(2.0)));
    CHECK_THROWS_AS(hydrogenic_radial(0, k, 0.0), DomainError);
}
