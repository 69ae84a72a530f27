#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/evolution.hpp"
#include "scatdeco/oracle.hpp"

using namespace scatdeco;

namespace {
constexpr double kMass = 1.66e-27;
}

TEST_CASE("transfer matrix is upper triangular with exp(-x0/2) on the diagonal") {
    const auto a = AtomSpec::from_nucleus_mass(12, kMass);
    const auto t = transfer_matrix(a, Displacement::from_x0(a, 0.4));
    for (int n = 1; n <= 12; ++n)
        for (int np = 1; np <= 12; ++np) {
            if (n > np) CHECK(t(n, np) == 0.0);
            if (n == np) CHECK(t(n, np) == doctest::Approx(std::exp(-0.2)));
        }
}

TEST_CASE("last column is the single-scatter state") {
    const auto a = AtomSpec::from_nucleus_mass(9, kMass);
    const auto d = Displacement::from_x0(a, 0.7);
    const auto t = transfer_matrix(a, d);
    const auto s = single_scatter_coefficients(a, d);
    for (int n = 1; n <= 9; ++n) CHECK(t(n, 9) == doctest::Approx(s.c(n)));
}

TEST_CASE("property: successive displacements compose additively") {
    gen::Source src;
    for (int i = 0; i < 100; ++i) {
        const int n0 = src.integer(1, 25);
        const double xa = src.uniform(0.0, 1.0);
        const double xb = src.uniform(0.0, 1.0);
        const auto a = AtomSpec::from_nucleus_mass(n0, kMass);
        const auto prod = transfer_matrix(a, Displacement::from_x0(a, xa)) *
                          transfer_matrix(a, Displacement::from_x0(a, xb));
        const auto sum = transfer_matrix(a, Displacement::from_x0(a, xa + xb));
        INFO("n0=", n0, " xa=", xa, " xb=", xb);
        for (int n = 1; n <= n0; ++n)
            for (int np = n; np <= n0; ++np)
                CHECK(std::abs(prod(n, np) - sum(n, np)) <= 1e-12 * std::max(1.0, std::abs(sum(n, np))));
    }
}

TEST_CASE("power matches repeated application and closed forms") {
    const auto a = AtomSpec::from_nucleus_mass(15, kMass);
    const auto d = Displacement::from_x0(a, 0.1);
    const auto t = transfer_matrix(a, d);
    for (int l : {0, 1, 2, 5, 20}) {
        const auto p = t.power(l);
        const auto s = coefficients_after_l(a, d, l);
        for (int n = 1; n <= 15; ++n) CHECK(p(n, 15) == doctest::Approx(s.c(n)));
        CHECK(gen::rel(s.c(15), closed_form_cn0(a, d, l)) < 1e-12);
        CHECK(gen::rel(s.c(14), closed_form_cn1(a, d, l)) < 1e-12);
    }
    CHECK(TransferMatrix::identity(3)(2, 2) == 1.0);
    CHECK_THROWS_AS(t.power(-1), DomainError);
}

TEST_CASE("two scatters match the explicit double sum") {
    const auto a = AtomSpec::from_nucleus_mass(8, kMass);
    const auto d = Displacement::from_x0(a, 0.35);
    const auto s = coefficients_after_l(a, d, 2);
    for (int n = 1; n <= 8; ++n) CHECK(s.c(n) == doctest::Approx(oracle::two_scatter_coefficient(a, d, n)));
}

TEST_CASE("sequence of unequal events") {
    const auto a = AtomSpec::from_nucleus_mass(6, kMass);
    const std::vector<Displacement> events{Displacement::from_x0(a, 0.1), Displacement::from_x0(a, 0.3),
                                           Displacement::from_x0(a, 0.05)};
    const auto s = coefficients_after_sequence(a, events);
    const auto once = single_scatter_coefficients(a, Displacement::from_x0(a, 0.45));
    for (int n = 1; n <= 6; ++n) CHECK(s.c(n) == doctest::Approx(once.c(n)));
}

TEST_CASE("closed form for the ground state has no lower level") {
    const auto a = AtomSpec::from_nucleus_mass(1, kMass);
    CHECK_THROWS_AS(closed_form_cn1(a, Displacement::from_x0(a, 0.1), 2), DomainError);
    CHECK(closed_form_cn0(a, Displacement::from_x0(a, 0.1), 2.5) == doctest::Approx(std::exp(-0.125)));
}

TEST_CASE("collision count") {
    const auto c = collisions(3e-28, 2e4, 10.0);
    CHECK(c.l == doctest::Approx(6e-23));
    CHECK_THROWS_AS(collisions(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("time series") {
    const auto grid = linear_time_grid(100.0, 5);
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 100.0);
    CHECK(linear_time_grid(7.0, 1) == std::vector<double>{7.0});
    CHECK_THROWS_AS(linear_time_grid(-1.0, 4), DomainError);
    CHECK_THROWS_AS(linear_time_grid(1.0, 0), DomainError);

    const auto s = evolve_with_rate(10, 0.02, 3.0, grid);
    CHECK(s.rate == doctest::Approx(0.03));
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.c_n0[i] == doctest::Approx(std::exp(-0.03 * grid[i])));
        CHECK(s.deficit[i] == doctest::Approx(1.0 - s.c_n0[i] * s.c_n0[i]));
        CHECK(s.c_n0_minus_1[i] == doctest::Approx(-3.0 * grid[i] * 0.02 * 9 / 100 * s.c_n0[i]));
    }
    const std::vector<double> bad{0.0, 2.0, 1.0};
    CHECK_THROWS_AS(evolve_with_rate(10, 0.02, 3.0, bad), DomainError);
}

TEST_CASE("tiny deficits keep full relative precision") {
    const std::vector<double> grid{1.0};
    const auto s = evolve_with_rate(60, 1e-20, 1e-10, grid);
    CHECK(gen::rel(s.deficit[0], 2 * 0.5e-20 * 1e-10) < 1e-12);
}
