#include "scatdeco/scenarios.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/units.hpp"

namespace scatdeco {

namespace {

constexpr double kRelativisticFraction = 0.1;

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw InputError("scenario: '" + std::string(key) + "' is not a number: " + s);
    return v;
}

double relative_difference(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

} // namespace

bool operator==(const PhotonChannel& a, const PhotonChannel& b) {
    return a.energy_density == b.energy_density && a.frequency == b.frequency;
}

bool operator==(const MassiveChannel& a, const MassiveChannel& b) {
    return a.particle_mass == b.particle_mass && a.velocity == b.velocity &&
           a.cross_section == b.cross_section && a.flux == b.flux;
}

void validate(const PhotonChannel& ch) {
    if (!(ch.energy_density > 0.0)) throw DomainError("photon channel: energy density must be positive");
    if (!(ch.frequency > 0.0)) throw DomainError("photon channel: frequency must be positive");
}

void validate(const MassiveChannel& ch) {
    if (!(ch.particle_mass > 0.0)) throw DomainError("massive channel: particle mass must be positive");
    if (!(ch.velocity > 0.0)) throw DomainError("massive channel: velocity must be positive");
    if (!(ch.cross_section > 0.0)) throw DomainError("massive channel: cross section must be positive");
    if (!(ch.flux > 0.0)) throw DomainError("massive channel: flux must be positive");
}

double thomson_cross_section(const AtomSpec& atom) {
    const double rest = atom.nucleus_mass() * phys.speed_of_light * phys.speed_of_light;
    const double radius = coulomb_coupling() / rest;
    return 8.0 * std::numbers::pi / 3.0 * radius * radius;
}

ScatterEnergy photon_energy_transfer(const AtomSpec& atom, const PhotonChannel& ch) {
    if (!(ch.frequency > 0.0)) throw DomainError("photon channel: frequency must be positive");
    const double photon = phys.planck_constant * ch.frequency;
    const double rest = atom.nucleus_mass() * phys.speed_of_light * phys.speed_of_light;
    return ScatterEnergy::joules(photon * (photon / rest));
}

ScatterEnergy massive_energy_transfer(const AtomSpec& atom, const MassiveChannel& ch) {
    if (!(ch.velocity >= 0.0)) throw DomainError("massive channel: velocity must be >= 0");
    const double p = ch.particle_mass * ch.velocity;
    const double factor = atom.reduced_mass() / (atom.nucleus_mass() * phys.electron_mass);
    return ScatterEnergy::joules(factor * p * p);
}

double photon_flux(const PhotonChannel& ch) {
    return ch.energy_density * phys.speed_of_light / (phys.planck_constant * ch.frequency);
}

double photon_direct_rate(const AtomSpec& atom, const PhotonChannel& ch) {
    validate(ch);
    const double log_rate = std::log(std::sqrt(8.0) * std::numbers::pi / 3.0) +
                            std::log(double(atom.n0())) + std::log(ch.energy_density) +
                            2.0 * std::log(phys.electron_mass) + 3.0 * std::log(phys.hbar) -
                            std::log(phys.bohr_radius) - 3.0 * std::log(atom.reduced_mass()) -
                            3.0 * std::log(atom.nucleus_mass()) -
                            4.0 * std::log(phys.speed_of_light);
    return std::exp(log_rate);
}

double massive_direct_rate(const AtomSpec& atom, const MassiveChannel& ch) {
    validate(ch);
    const double me = phys.electron_mass;
    const double mu = atom.reduced_mass();
    const double log_rate = std::log(double(atom.n0())) + std::log(ch.cross_section) +
                            std::log(ch.flux) + std::log(ch.particle_mass) + std::log(ch.velocity) -
                            0.5 * std::log(8.0) - std::log(phys.bohr_radius) -
                            std::log(atom.nucleus_mass()) + 0.5 * std::log(mu / me) +
                            2.0 * std::log(me / coulomb_coupling()) + 3.0 * std::log(phys.hbar / mu);
    return std::exp(log_rate);
}

namespace {

ChannelRates compose(const AtomSpec& atom, double sigma, double flux, ScatterEnergy e,
                     double direct) {
    ChannelRates r;
    r.direct = direct;
    r.cross_section = sigma;
    r.collision_rate = collisions(sigma, flux, 1.0).l;
    r.energy = e;
    r.displacement = displacement_radius(atom, e);
    r.x0 = r.displacement.displacement(atom).x0();
    r.compositional = 0.5 * r.x0 * r.collision_rate;
    r.relative_mismatch = relative_difference(r.direct, r.compositional);
    r.consistent = r.relative_mismatch <= kRateConsistencyTolerance;
    r.relativistic_recoil = r.displacement.delta_v > kRelativisticFraction * phys.speed_of_light;
    return r;
}

} // namespace

ChannelRates photon_rates(const AtomSpec& atom, const PhotonChannel& ch) {
    validate(ch);
    return compose(atom, thomson_cross_section(atom), photon_flux(ch), photon_energy_transfer(atom, ch),
                   photon_direct_rate(atom, ch));
}

ChannelRates massive_rates(const AtomSpec& atom, const MassiveChannel& ch) {
    validate(ch);
    auto r = compose(atom, ch.cross_section, ch.flux, massive_energy_transfer(atom, ch),
                     massive_direct_rate(atom, ch));
    r.relativistic_projectile = ch.velocity > kRelativisticFraction * phys.speed_of_light;
    return r;
}

ChannelRates channel_rates(const AtomSpec& atom, const Channel& ch) {
    return std::visit(
        [&](const auto& c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, PhotonChannel>)
                return photon_rates(atom, c);
            else
                return massive_rates(atom, c);
        },
        ch);
}

namespace {

ScenarioSeries survival_from(const AtomSpec& atom, ChannelRates rates, std::span<const double> t_grid) {
    ScenarioSeries out{evolve_with_rate(atom.n0(), rates.x0, rates.collision_rate, t_grid), rates};
    return out;
}

} // namespace

ScenarioSeries photon_survival(const AtomSpec& atom, const PhotonChannel& ch,
                               std::span<const double> t_grid) {
    return survival_from(atom, photon_rates(atom, ch), t_grid);
}

ScenarioSeries massive_survival(const AtomSpec& atom, const MassiveChannel& ch,
                                std::span<const double> t_grid) {
    return survival_from(atom, massive_rates(atom, ch), t_grid);
}

ScenarioSeries channel_survival(const AtomSpec& atom, const Channel& ch,
                                std::span<const double> t_grid) {
    return survival_from(atom, channel_rates(atom, ch), t_grid);
}

double velocity_from_kinetic_energy(double mass, double kinetic_energy) {
    if (!(mass > 0.0) || !(kinetic_energy >= 0.0))
        throw DomainError("velocity_from_kinetic_energy: need mass > 0, energy >= 0");
    return std::sqrt(2.0 * kinetic_energy / mass);
}

double mean_thermal_speed(double mass, double temperature) {
    if (!(mass > 0.0) || !(temperature >= 0.0))
        throw DomainError("mean_thermal_speed: need mass > 0, temperature >= 0");
    return std::sqrt(8.0 * phys.boltzmann_constant * temperature / (std::numbers::pi * mass));
}

double thermal_relativity_ratio(double mass, double temperature) {
    return phys.boltzmann_constant * temperature / (mass * phys.speed_of_light * phys.speed_of_light);
}

namespace {

constexpr std::array<std::string_view, 5> kPresetNames{"solar", "lab_lights", "cmb", "cosmic_neutrons",
                                                       "axion_dm"};

// Peak of a black body in frequency, nu = 2.821439 k T / h.
double blackbody_peak_frequency(double temperature) {
    return 2.821439372122079 * phys.boltzmann_constant * temperature / phys.planck_constant;
}

ScenarioPreset make_preset(std::string_view name) {
    if (name == "solar") {
        return {"solar",
                PhotonChannel{to_si(8.49, "MeV/cm^3"), blackbody_peak_frequency(5772.0)},
                "ground-level sunlight, 52.2 PW total insolation (eta_E = 8.49 MeV/cm^3)",
                "frequency is the 5772 K black-body peak; diagnostic only"};
    }
    if (name == "lab_lights") {
        return {"lab_lights",
                PhotonChannel{to_si(1.17, "keV/cm^3"), phys.speed_of_light / 545e-9},
                "lit AMO laboratory, 4 uW measured on a 9.5 mm detector (eta_E = 1.17 keV/cm^3)",
                "frequency is 545 nm visible light; diagnostic only"};
    }
    if (name == "cmb") {
        return {"cmb",
                PhotonChannel{to_si(0.25, "eV/cm^3"), blackbody_peak_frequency(2.726)},
                "cosmic microwave background (eta_E = 0.25 eV/cm^3)",
                "frequency is the 2.726 K black-body peak; diagnostic only"};
    }
    if (name == "cosmic_neutrons") {
        const double m = 1.67e-27;
        const double ek = to_si(0.07, "GeV");
        const double v = velocity_from_kinetic_energy(m, ek);
        return {"cosmic_neutrons",
                MassiveChannel{m, v, to_si(3.0, "barn"), 2e4},
                "secondary cosmic-ray neutrons: F = 2e4 /(m^2 s), sigma = 3 barn, "
                "kinetic energy 0.07 GeV, m_p = 1.67e-27 kg",
                "velocity = sqrt(2 E_k / m_p) (non-relativistic inversion, v = " +
                    format_real(v / phys.speed_of_light) + " c)"};
    }
    if (name == "axion_dm") {
        const double m = to_si(1.0, "eV/c^2");
        const double rho = 5.41e-22;
        const double temperature = 2.726;
        const double v = mean_thermal_speed(m, temperature);
        return {"axion_dm",
                MassiveChannel{m, v, to_si(0.01, "barn"), rho / m * v},
                "local dark matter as axions: rho = 5.41e-22 kg/m^3, m_p = 1 eV/c^2, "
                "sigma = 0.01 barn, thermalized at T = 2.726 K",
                "velocity = Maxwell-Boltzmann mean speed sqrt(8 k T / (pi m)); "
                "flux = (rho / m_p) * velocity; k T / (m c^2) = " +
                    format_real(thermal_relativity_ratio(m, temperature)) + " (non-relativistic)"};
    }
    std::string valid;
    for (auto n : kPresetNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
    throw InputError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

} // namespace

std::span<const std::string_view> preset_names() { return kPresetNames; }

ScenarioPreset preset(std::string_view name) { return make_preset(name); }

std::vector<ScenarioPreset> all_presets() {
    std::vector<ScenarioPreset> out;
    for (auto n : kPresetNames) out.push_back(make_preset(n));
    return out;
}

std::string serialize(const ScenarioPreset& p) {
    std::ostringstream os;
    os << "name = " << p.name << '\n';
    os << "provenance = " << p.provenance << '\n';
    if (const auto* ph = std::get_if<PhotonChannel>(&p.channel)) {
        os << "kind = photon\n";
        os << "energy_density = " << format_real(ph->energy_density) << '\n';
        os << "frequency = " << format_real(ph->frequency) << '\n';
    } else {
        const auto& m = std::get<MassiveChannel>(p.channel);
        os << "kind = massive\n";
        os << "particle_mass = " << format_real(m.particle_mass) << '\n';
        os << "velocity = " << format_real(m.velocity) << '\n';
        os << "cross_section = " << format_real(m.cross_section) << '\n';
        os << "flux = " << format_real(m.flux) << '\n';
    }
    if (!p.notes.empty()) os << "notes = " << p.notes << '\n';
    return os.str();
}

ScenarioPreset parse_scenario(std::string_view text) {
    std::map<std::string, std::string, std::less<>> fields;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InputError("scenario line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (fields.count(key))
            throw InputError("scenario line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        fields[key] = std::string(trim(line.substr(eq + 1)));
    }

    auto take = [&](std::string_view key) {
        const auto it = fields.find(key);
        if (it == fields.end()) throw InputError("scenario: missing key '" + std::string(key) + "'");
        auto v = it->second;
        fields.erase(it);
        return v;
    };
    auto take_real = [&](std::string_view key) { return parse_real(key, take(key)); };

    ScenarioPreset p;
    p.name = fields.count("name") ? take("name") : "custom";
    p.provenance = fields.count("provenance") ? take("provenance") : "user";
    const auto kind = take("kind");
    if (kind == "photon") {
        PhotonChannel ch{};
        ch.energy_density = take_real("energy_density");
        ch.frequency = take_real("frequency");
        validate(ch);
        p.channel = ch;
    } else if (kind == "massive") {
        MassiveChannel ch{};
        ch.particle_mass = take_real("particle_mass");
        ch.velocity = take_real("velocity");
        ch.cross_section = take_real("cross_section");
        ch.flux = take_real("flux");
        validate(ch);
        p.channel = ch;
    } else {
        throw InputError("scenario: kind must be 'photon' or 'massive', got '" + kind + "'");
    }
    if (fields.count("notes")) p.notes = take("notes");
    if (!fields.empty()) throw InputError("scenario: unknown key '" + fields.begin()->first + "'");
    return p;
}

} // namespace scatdeco
