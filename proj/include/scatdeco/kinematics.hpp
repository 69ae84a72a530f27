#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "scatdeco/projection.hpp"

namespace scatdeco {

// Energy transferred to the nucleus by one scattering (J).
struct ScatterEnergy {
    double delta_E = 0.0;

    static ScatterEnergy joules(double j);
    static ScatterEnergy electronvolts(double ev);
};

enum class Validity {
    ok,
    near_atom_scale, // r_d / (n0 a0) >= 0.5
    beyond_model,    // r_d / a0 >= 1
};

std::string_view to_string(Validity v);

// beyond_model if r_d / a0 >= 1, else near_atom_scale if r_d / (n0 a0) >= 0.5.
Validity classify_displacement(int n0, double r_d_over_a0);

struct DisplacementResult {
    double tau = 0.0;          // s
    double delta_v = 0.0;      // m/s
    double r_d = 0.0;          // m
    double r_d_over_a0 = 0.0;
    Validity validity = Validity::ok;
    bool exceeds_ionization = false; // delta_E above the level's binding energy

    Displacement displacement(const AtomSpec& atom) const;
};

// tau = hbar^3 / (4 mu^3) (n0 m_e / (k_c e^2))^2, evaluated as
// n0^2 (a0^2 m_e / (4 hbar)) (m_e / mu)^3.
double interaction_time(const AtomSpec& atom);

// sqrt(2 dE / m_N)
double recoil_velocity(const AtomSpec& atom, ScatterEnergy e);

// Binding energy of level n0 with reduced-mass correction, (mu / m_e) E_R / n0^2.
double ionization_threshold(const AtomSpec& atom);

DisplacementResult displacement_radius(const AtomSpec& atom, ScatterEnergy e);

// C_{n0} = exp(-k0 r_d / 2) = exp(-r_d / (n0 a0)).
double survival_amplitude(const AtomSpec& atom, ScatterEnergy e);

// One point of an n0 sweep at fixed nucleus mass and transferred energy.
struct SweepPoint {
    int n0;
    double p_n0;          // |C_{n0}|^2
    double p_n0_minus_1;  // |C_{n0-1}|^2, 0 for n0 = 1
    double r_d_over_a0;
    Validity validity;
    bool exceeds_ionization;
};

std::vector<SweepPoint> n0_sweep(double nucleus_mass, ScatterEnergy e, int n0_min, int n0_max);

struct InteriorMaximum {
    int n0;
    double p_n0_minus_1;
    double r_d_over_a0;
    double r_d_over_n0_a0;
};

// Largest |C_{n0-1}|^2 strictly inside the sweep (greater than both
// neighbours and not at an endpoint), if any.
std::optional<InteriorMaximum> interior_maximum(const std::vector<SweepPoint>& sweep);

} // namespace scatdeco
