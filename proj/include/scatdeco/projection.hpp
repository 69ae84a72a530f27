#pragma once

#include <span>
#include <vector>

namespace scatdeco {

// Physical identity of the atom: initial principal quantum number and the
// nuclear / reduced masses.
class AtomSpec {
public:
    // Reduced mass from m_e m_N / (m_e + m_N).
    static AtomSpec from_nucleus_mass(int n0, double nucleus_mass);

    // Explicit reduced mass; must satisfy 0 < mu <= m_e.
    AtomSpec(int n0, double nucleus_mass, double reduced_mass);

    int n0() const noexcept { return n0_; }
    double nucleus_mass() const noexcept { return nucleus_mass_; }
    double reduced_mass() const noexcept { return reduced_mass_; }

    // Shared inverse-length scale k0 = 2 / (n0 a0), 1/m.
    double k0() const noexcept;

    AtomSpec with_n0(int n0) const { return AtomSpec(n0, nucleus_mass_, reduced_mass_); }

private:
    int n0_;
    double nucleus_mass_;
    double reduced_mass_;
};

// Nuclear displacement r_d together with x0 = k0 r_d for the atom it was
// built for.
class Displacement {
public:
    static Displacement from_radius(const AtomSpec& atom, double r_d);
    static Displacement from_x0(const AtomSpec& atom, double x0);
    static Displacement none() { return Displacement(0.0, 0.0); }

    double r_d() const noexcept { return r_d_; }
    double x0() const noexcept { return x0_; }

    // Throws DomainError if this displacement was built for a different k0.
    void check_compatible(const AtomSpec& atom) const;

private:
    Displacement(double r_d, double x0) : r_d_(r_d), x0_(x0) {}
    double r_d_;
    double x0_;
};

// Post-scatter state: C_1 .. C_n0 over same-scale s-state basis functions.
struct RadialSuperposition {
    int n0 = 0;
    double k0 = 0.0;
    std::vector<double> coefficients; // coefficients[n-1] = C_n

    double c(int n) const { return coefficients.at(std::size_t(n - 1)); }
    double norm_squared() const;
    // 1 - sum C_n^2: weight not carried by the n <= n0 levels.
    double leakage() const { return 1.0 - norm_squared(); }
};

// Same-scale basis function with the unnormalized prefactor the coefficient
// formulas are written against:
//   B_m(r) = -k^{3/2} / (sqrt(2) m m!) exp(-k r / 2) L_{m-1}^1(k r)
// Equals hydrogenic_radial(m, k, r) / m!.
double basis_function(int m, double k, double r);

// psi(r + r_d) = B_{n0}(r + r_d) at scale k0.
double shifted_wavefunction(const AtomSpec& atom, const Displacement& d, double r);

// C_n = exp(-x0/2) (n n! / (n0 n0!)) L_{n0-n}^{-1}(x0), n = 1..n0.
RadialSuperposition single_scatter_coefficients(const AtomSpec& atom, const Displacement& d);

// max_r |psi(r + r_d) - sum_m C_m B_m(r)| / max(|psi(r + r_d)|, 1e-300)
double expansion_identity_residual(const AtomSpec& atom, const Displacement& d,
                                   std::span<const double> r_grid);

// Probability of a Delta l = 1 transition, (1 / 3pi) (r_d / (n0 a0))^2.
// Diagnostic only.
double delta_l_transition_probability(const AtomSpec& atom, const Displacement& d);

// Overlap of the true eigenstate R_n (own scale 2 / (n a0)) with the
// normalized displaced initial state, int R_n(r) R_{n0}(r + r_d) r^2 dr.
// Measures how far the same-scale coefficients are from a projection onto
// actual hydrogen eigenstates.
double true_eigenstate_overlap(const AtomSpec& atom, const Displacement& d, int n);

} // namespace scatdeco
