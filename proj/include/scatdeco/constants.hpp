#pragma once

#include <numbers>
#include <string_view>

namespace scatdeco {

// SI values, CODATA 2018 recommended set.
struct PhysicalConstants {
    double hbar;               // J s
    double electron_mass;      // kg
    double coulomb_constant;   // N m^2 / C^2
    double elementary_charge;  // C
    double bohr_radius;        // m
    double speed_of_light;     // m / s
    double planck_constant;    // J s
    double boltzmann_constant; // J / K
    double barn;               // m^2
    double electronvolt;       // J
    double atomic_mass_unit;   // kg
};

inline constexpr PhysicalConstants codata2018{
    .hbar = 6.62607015e-34 / (2.0 * std::numbers::pi), // exact h / 2pi
    .electron_mass = 9.1093837015e-31,
    .coulomb_constant = 8.9875517923e9,
    .elementary_charge = 1.602176634e-19,
    .bohr_radius = 5.29177210903e-11,
    .speed_of_light = 299792458.0,
    .planck_constant = 6.62607015e-34,
    .boltzmann_constant = 1.380649e-23,
    .barn = 1e-28,
    .electronvolt = 1.602176634e-19,
    .atomic_mass_unit = 1.66053906660e-27,
};

inline constexpr std::string_view constant_set_version = "CODATA 2018";

// Shorthand used throughout the library.
inline constexpr const PhysicalConstants& phys = codata2018;

// k_c e^2, the Coulomb coupling (J m).
inline constexpr double coulomb_coupling() {
    return phys.coulomb_constant * phys.elementary_charge * phys.elementary_charge;
}

// Hydrogen ground-state binding energy with infinite nuclear mass (J).
inline constexpr double rydberg_energy() {
    return coulomb_coupling() / (2.0 * phys.bohr_radius);
}

} // namespace scatdeco
