#include "scatdeco/projection.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/quadrature.hpp"
#include "scatdeco/special_functions.hpp"

namespace scatdeco {

AtomSpec AtomSpec::from_nucleus_mass(int n0, double nucleus_mass) {
    if (!(nucleus_mass > 0.0)) throw DomainError("AtomSpec: nucleus mass must be positive");
    const double me = phys.electron_mass;
    // m_e m_N / (m_e + m_N) = m_e / (1 + m_e / m_N), better conditioned
    const double mu = me / (1.0 + me / nucleus_mass);
    return AtomSpec(n0, nucleus_mass, mu);
}

AtomSpec::AtomSpec(int n0, double nucleus_mass, double reduced_mass)
    : n0_(n0), nucleus_mass_(nucleus_mass), reduced_mass_(reduced_mass) {
    if (n0 < 1) throw DomainError("AtomSpec: n0 must be >= 1, got " + std::to_string(n0));
    if (!(nucleus_mass > 0.0)) throw DomainError("AtomSpec: nucleus mass must be positive");
    if (!(reduced_mass > 0.0)) throw DomainError("AtomSpec: reduced mass must be positive");
    if (reduced_mass > phys.electron_mass * (1.0 + 1e-12))
        throw DomainError("AtomSpec: reduced mass cannot exceed the electron mass");
}

double AtomSpec::k0() const noexcept { return 2.0 / (n0_ * phys.bohr_radius); }

Displacement Displacement::from_radius(const AtomSpec& atom, double r_d) {
    if (!(r_d >= 0.0)) throw DomainError("Displacement: r_d must be >= 0");
    return Displacement(r_d, atom.k0() * r_d);
}

Displacement Displacement::from_x0(const AtomSpec& atom, double x0) {
    if (!(x0 >= 0.0)) throw DomainError("Displacement: x0 must be >= 0");
    return Displacement(x0 / atom.k0(), x0);
}

void Displacement::check_compatible(const AtomSpec& atom) const {
    const double expected = atom.k0() * r_d_;
    if (std::abs(expected - x0_) > 1e-12 * std::max(std::abs(x0_), 1e-300))
        throw DomainError("Displacement was built for a different atom (x0 = " +
                          std::to_string(x0_) + ", k0 r_d = " + std::to_string(expected) + ")");
}

double RadialSuperposition::norm_squared() const {
    return std::transform_reduce(coefficients.begin(), coefficients.end(), 0.0, std::plus<>{},
                                 [](double c) { return c * c; });
}

double basis_function(int m, double k, double r) {
    if (m < 1) throw DomainError("basis_function: m must be >= 1");
    if (r < 0.0) throw DomainError("basis_function: r must be >= 0");
    const double x = k * r;
    const double log_norm = std::log(double(m)) + log_factorial(m);
    return -std::pow(k, 1.5) / std::numbers::sqrt2 * std::exp(-0.5 * x - log_norm) *
           laguerre(m - 1, 1, x);
}

double shifted_wavefunction(const AtomSpec& atom, const Displacement& d, double r) {
    if (r < 0.0) throw DomainError("shifted_wavefunction: r must be >= 0");
    d.check_compatible(atom);
    const int n0 = atom.n0();
    const double k = atom.k0();
    const double x = k * r + d.x0();
    const double log_norm = std::log(double(n0)) + log_factorial(n0);
    return -std::pow(k, 1.5) / std::numbers::sqrt2 * std::exp(-0.5 * x - log_norm) *
           laguerre(n0 - 1, 1, x);
}

RadialSuperposition single_scatter_coefficients(const AtomSpec& atom, const Displacement& d) {
    d.check_compatible(atom);
    const int n0 = atom.n0();
    const double x0 = d.x0();

    // L_j^{-1}(x0) for j = 0 .. n0-1; C_n uses j = n0 - n.
    std::vector<double> lag(static_cast<std::size_t>(n0));
    laguerre_sequence(-1, x0, lag);

    RadialSuperposition out{n0, atom.k0(), std::vector<double>(std::size_t(n0))};
    for (int n = 1; n <= n0; ++n) {
        const double weight = std::exp(-0.5 * x0 + log_factorial_ratio(n, n0));
        out.coefficients[std::size_t(n - 1)] = weight * lag[std::size_t(n0 - n)];
    }
    // L_0^{-1} = 1, so the top coefficient is exactly exp(-x0/2).
    out.coefficients.back() = std::exp(-0.5 * x0);
    return out;
}

double expansion_identity_residual(const AtomSpec& atom, const Displacement& d,
                                   std::span<const double> r_grid) {
    if (r_grid.empty()) throw DomainError("expansion_identity_residual: empty grid");
    const auto sup = single_scatter_coefficients(atom, d);
    const int n0 = atom.n0();
    const double k = atom.k0();

    double worst = 0.0;
    for (double r : r_grid) {
        if (r < 0.0) throw DomainError("expansion_identity_residual: r must be >= 0");
        const double lhs = shifted_wavefunction(atom, d, r);
        double rhs = 0.0;
        for (int m = 1; m <= n0; ++m) rhs += sup.c(m) * basis_function(m, k, r);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300));
    }
    return worst;
}

double delta_l_transition_probability(const AtomSpec& atom, const Displacement& d) {
    if (d.r_d() < 0.0) throw DomainError("delta_l_transition_probability: r_d must be >= 0");
    const double ratio = d.r_d() / (atom.n0() * phys.bohr_radius);
    return ratio * ratio / (3.0 * std::numbers::pi);
}

double true_eigenstate_overlap(const AtomSpec& atom, const Displacement& d, int n) {
    if (n < 1) throw DomainError("true_eigenstate_overlap: n must be >= 1");
    d.check_compatible(atom);
    // Lengths in Bohr radii.
    const int n0 = atom.n0();
    const double kn = 2.0 / n;
    const double k0 = 2.0 / n0;
    const double x0 = d.x0();
    const double jac = 2.0 / (kn + k0); // r = jac * y
    const double pre = std::pow(kn * k0, 1.5) / (2.0 * n * n0) * std::exp(-0.5 * x0) * jac;
    auto f = [&](double y) {
        const double r = jac * y;
        return pre * laguerre(n - 1, 1, kn * r) * laguerre(n0 - 1, 1, k0 * r + x0) * r * r;
    };
    return integrate_converged(f, 1.0).value;
}

} // namespace scatdeco
