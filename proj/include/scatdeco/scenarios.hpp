#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scatdeco/evolution.hpp"
#include "scatdeco/kinematics.hpp"
#include "scatdeco/projection.hpp"

namespace scatdeco {

// Ambient radiation field. Only energy_density enters the decay rate; the
// frequency cancels between photon count and recoil and is kept as a
// diagnostic input.
struct PhotonChannel {
    double energy_density; // J/m^3
    double frequency;      // Hz
};

struct MassiveChannel {
    double particle_mass; // kg
    double velocity;      // m/s
    double cross_section; // m^2
    double flux;          // 1/(m^2 s)
};

using Channel = std::variant<PhotonChannel, MassiveChannel>;

void validate(const PhotonChannel& ch);
void validate(const MassiveChannel& ch);

struct ScenarioPreset {
    std::string name;
    Channel channel;
    std::string provenance; // data source, or "user"
    std::string notes;      // how derived channel parameters were obtained

    bool operator==(const ScenarioPreset&) const = default;
};

bool operator==(const PhotonChannel& a, const PhotonChannel& b);
bool operator==(const MassiveChannel& a, const MassiveChannel& b);

// Thomson cross section of the nucleus, (8 pi / 3) (k_c e^2 / (m_N c^2))^2.
double thomson_cross_section(const AtomSpec& atom);

// Photon recoil energy h^2 nu^2 / (m_N c^2).
ScatterEnergy photon_energy_transfer(const AtomSpec& atom, const PhotonChannel& ch);

// Transfer at the most probable angle, (mu / (m_N m_e)) (m_p v_p)^2.
ScatterEnergy massive_energy_transfer(const AtomSpec& atom, const MassiveChannel& ch);

// Photon number flux eta c / (h nu).
double photon_flux(const PhotonChannel& ch);

// Decay rate of C_{n0}(t) = exp(-rate t) along the two routes: the closed-form
// rate expression and the pipeline collision rate -> dE -> r_d -> x0.
struct ChannelRates {
    double direct = 0.0;
    double compositional = 0.0;
    double relative_mismatch = 0.0;
    bool consistent = true;         // relative_mismatch <= kRateConsistencyTolerance
    double collision_rate = 0.0;    // sigma F, 1/s
    double cross_section = 0.0;     // m^2
    ScatterEnergy energy;           // per event
    DisplacementResult displacement;
    double x0 = 0.0;                // per event
    bool relativistic_projectile = false; // v_p > 0.1 c
    bool relativistic_recoil = false;     // delta_v > 0.1 c
};

inline constexpr double kRateConsistencyTolerance = 1e-6;

// sqrt(8) pi n0 eta m_e^2 hbar^3 / (3 a0 mu^3 m_N^3 c^4)
double photon_direct_rate(const AtomSpec& atom, const PhotonChannel& ch);

// n0 sigma F m_p v_p / (sqrt(8) a0 m_N) (mu/m_e)^{1/2} (m_e/(k_c e^2))^2 (hbar/mu)^3
double massive_direct_rate(const AtomSpec& atom, const MassiveChannel& ch);

ChannelRates photon_rates(const AtomSpec& atom, const PhotonChannel& ch);
ChannelRates massive_rates(const AtomSpec& atom, const MassiveChannel& ch);
ChannelRates channel_rates(const AtomSpec& atom, const Channel& ch);

struct ScenarioSeries {
    EvolutionSeries series; // from the compositional route
    ChannelRates rates;
};

ScenarioSeries photon_survival(const AtomSpec& atom, const PhotonChannel& ch,
                               std::span<const double> t_grid);
ScenarioSeries massive_survival(const AtomSpec& atom, const MassiveChannel& ch,
                                std::span<const double> t_grid);
ScenarioSeries channel_survival(const AtomSpec& atom, const Channel& ch,
                                std::span<const double> t_grid);

// Preset names in canonical order: solar, lab_lights, cmb, cosmic_neutrons, axion_dm.
std::span<const std::string_view> preset_names();

// Throws InputError naming the valid presets.
ScenarioPreset preset(std::string_view name);

std::vector<ScenarioPreset> all_presets();

// Source parameters used to build the massive presets.
double velocity_from_kinetic_energy(double mass, double kinetic_energy);
double mean_thermal_speed(double mass, double temperature);
// k_B T / (m c^2); << 1 means a non-relativistic thermal population.
double thermal_relativity_ratio(double mass, double temperature);

// key = value text, one field per line; see README for the keys.
std::string serialize(const ScenarioPreset& p);
ScenarioPreset parse_scenario(std::string_view text);

} // namespace scatdeco
