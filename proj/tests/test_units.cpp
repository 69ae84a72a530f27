#include <doctest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/units.hpp"

using namespace scatdeco;

TEST_CASE("bohr radius is consistent with hbar, m_e and the coulomb coupling") {
    const double a0 = phys.hbar * phys.hbar / (phys.electron_mass * coulomb_coupling());
    CHECK(gen::rel(a0, phys.bohr_radius) < 1e-9);
}

TEST_CASE("rydberg energy is 13.6 eV") {
    CHECK(rydberg_energy() / phys.electronvolt == doctest::Approx(13.605693).epsilon(1e-6));
}

TEST_CASE("energy density of solar radiation converts to SI") {
    const auto q = convert(Quantity(8.49, "MeV/cm^3"), "J/m^3");
    CHECK(q.value() == doctest::Approx(1.360e-6).epsilon(1e-3));
    CHECK(q.dimension() == Dimension::energy_density);
}

TEST_CASE("named conversions") {
    CHECK(to_si(3.0, "barn") == doctest::Approx(3e-28));
    CHECK(to_si(1.0, "eV/c^2") == doctest::Approx(1.78266192e-36).epsilon(1e-8));
    CHECK(to_si(1.0, "yr") == doctest::Approx(3.15576e7));
    CHECK(to_si(0.07, "GeV") == doctest::Approx(0.07e9 * phys.electronvolt));
    CHECK(to_si(1.0, "a0") == phys.bohr_radius);
    CHECK(to_si(1.0, "c") == phys.speed_of_light);
}

TEST_CASE("cross-dimension arithmetic and conversion throw") {
    const Quantity e(1.0, "eV");
    const Quantity m(1.0, "kg");
    CHECK_THROWS_AS(e + m, DimensionError);
    CHECK_THROWS_AS(e - m, DimensionError);
    CHECK_THROWS_AS((void)(e < m), DimensionError);
    CHECK_THROWS_AS(convert(e, "m"), DimensionError);
    CHECK_THROWS_AS(convert(e, "furlong"), InputError);
    CHECK_THROWS_AS(Quantity(1.0, "parsec"), InputError);
}

TEST_CASE("same-dimension arithmetic works in mixed units") {
    const auto sum = Quantity(1.0, "keV") + Quantity(500.0, "eV");
    CHECK(sum.unit() == "keV");
    CHECK(sum.value() == doctest::Approx(1.5));
    CHECK(Quantity(1.0, "km/s") > Quantity(999.0, "m/s"));
    CHECK(Quantity(1.0, "cm") == Quantity(0.01, "m"));
}

TEST_CASE("property: conversion round trip is lossless to 1e-14") {
    gen::Source src;
    const auto table = unit_table();
    for (int i = 0; i < gen::kCases; ++i) {
        const auto& a = src.pick(table);
        std::vector<std::string_view> same;
        for (const auto& u : table)
            if (u.dimension == a.dimension) same.push_back(u.name);
        const auto b = src.pick(same);
        const double v = src.log_uniform(1e-30, 1e30) * (src.coin() ? 1.0 : -1.0);
        const Quantity q(v, a.name);
        const auto back = convert(convert(q, b), a.name);
        INFO("unit ", a.name, " via ", b, " value ", v);
        CHECK(gen::rel(back.value(), v) < 1e-14);
    }
}

TEST_CASE("every dimension has an SI unit of factor one") {
    for (const auto& u : unit_table()) CHECK(unit_info(si_unit(u.dimension)).to_si == 1.0);
}
