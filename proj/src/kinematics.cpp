#include "scatdeco/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"

namespace scatdeco {

namespace {

void check_energy(ScatterEnergy e) {
    if (!(e.delta_E >= 0.0)) throw DomainError("transferred energy must be >= 0");
}

// ln(tau): 2 ln n0 + ln(a0^2 m_e / (4 hbar)) + 3 ln(m_e / mu)
double log_interaction_time(const AtomSpec& atom) {
    static const double log_atomic =
        std::log(phys.bohr_radius) * 2.0 + std::log(phys.electron_mass) - std::log(4.0 * phys.hbar);
    return 2.0 * std::log(double(atom.n0())) + log_atomic +
           3.0 * std::log(phys.electron_mass / atom.reduced_mass());
}

} // namespace

ScatterEnergy ScatterEnergy::joules(double j) {
    ScatterEnergy e{j};
    check_energy(e);
    return e;
}

ScatterEnergy ScatterEnergy::electronvolts(double ev) { return joules(ev * phys.electronvolt); }

std::string_view to_string(Validity v) {
    switch (v) {
    case Validity::ok: return "ok";
    case Validity::near_atom_scale: return "near_atom_scale";
    case Validity::beyond_model: return "beyond_model";
    }
    return "unknown";
}

Validity classify_displacement(int n0, double r_d_over_a0) {
    if (r_d_over_a0 >= 1.0) return Validity::beyond_model;
    if (r_d_over_a0 / n0 >= 0.5) return Validity::near_atom_scale;
    return Validity::ok;
}

Displacement DisplacementResult::displacement(const AtomSpec& atom) const {
    // x0 = k0 r_d = 2 (r_d / a0) / n0, from the dimensionless ratio.
    return Displacement::from_x0(atom, 2.0 * r_d_over_a0 / atom.n0());
}

double interaction_time(const AtomSpec& atom) { return std::exp(log_interaction_time(atom)); }

double recoil_velocity(const AtomSpec& atom, ScatterEnergy e) {
    check_energy(e);
    return std::sqrt(2.0 * e.delta_E / atom.nucleus_mass());
}

double ionization_threshold(const AtomSpec& atom) {
    const double n0 = atom.n0();
    return atom.reduced_mass() / phys.electron_mass * rydberg_energy() / (n0 * n0);
}

DisplacementResult displacement_radius(const AtomSpec& atom, ScatterEnergy e) {
    check_energy(e);
    DisplacementResult out;
    out.tau = interaction_time(atom);
    out.delta_v = recoil_velocity(atom, e);
    out.r_d = out.delta_v * out.tau;
    if (e.delta_E > 0.0) {
        // r_d / a0 = exp(ln dv + ln tau - ln a0), free of the 1e-100-scale
        // intermediates of the SI product.
        const double log_dv = 0.5 * (std::log(2.0 * e.delta_E) - std::log(atom.nucleus_mass()));
        out.r_d_over_a0 = std::exp(log_dv + log_interaction_time(atom) - std::log(phys.bohr_radius));
    }
    out.validity = classify_displacement(atom.n0(), out.r_d_over_a0);
    out.exceeds_ionization = e.delta_E > ionization_threshold(atom);
    return out;
}

double survival_amplitude(const AtomSpec& atom, ScatterEnergy e) {
    const auto d = displacement_radius(atom, e).displacement(atom);
    return std::exp(-0.5 * d.x0());
}

std::vector<SweepPoint> n0_sweep(double nucleus_mass, ScatterEnergy e, int n0_min, int n0_max) {
    if (n0_min < 1 || n0_max < n0_min) throw DomainError("n0_sweep: need 1 <= n0_min <= n0_max");
    std::vector<SweepPoint> out;
    out.reserve(std::size_t(n0_max - n0_min + 1));
    for (int n0 = n0_min; n0 <= n0_max; ++n0) {
        const auto atom = AtomSpec::from_nucleus_mass(n0, nucleus_mass);
        const auto res = displacement_radius(atom, e);
        const auto sup = single_scatter_coefficients(atom, res.displacement(atom));
        const double c0 = sup.c(n0);
        const double c1 = n0 >= 2 ? sup.c(n0 - 1) : 0.0;
        out.push_back({n0, c0 * c0, c1 * c1, res.r_d_over_a0, res.validity, res.exceeds_ionization});
    }
    return out;
}

std::optional<InteriorMaximum> interior_maximum(const std::vector<SweepPoint>& sweep) {
    std::optional<InteriorMaximum> best;
    for (std::size_t i = 1; i + 1 < sweep.size(); ++i) {
        const auto& p = sweep[i];
        if (p.p_n0_minus_1 > sweep[i - 1].p_n0_minus_1 && p.p_n0_minus_1 > sweep[i + 1].p_n0_minus_1) {
            if (!best || p.p_n0_minus_1 > best->p_n0_minus_1)
                best = InteriorMaximum{p.n0, p.p_n0_minus_1, p.r_d_over_a0, p.r_d_over_a0 / p.n0};
        }
    }
    return best;
}

} // namespace scatdeco
