#pragma once

#include <span>
#include <vector>

#include "scatdeco/projection.hpp"

namespace scatdeco {

// Single-scatter map on the same-scale basis: column n' holds the
// coefficients of B_{n'}(r + r_d) over B_1 .. B_{n'}. T(n, n') = 0 for
// n > n' (no excitation).
class TransferMatrix {
public:
    TransferMatrix(int n0, std::vector<double> dense_row_major);

    int n0() const noexcept { return n0_; }
    // 1-based indices.
    double operator()(int n, int n_prime) const {
        return entries_[std::size_t(n - 1) * std::size_t(n0_) + std::size_t(n_prime - 1)];
    }

    // y = T v, exploiting the triangular structure. v indexed 0..n0-1.
    std::vector<double> apply(std::span<const double> v) const;

    TransferMatrix operator*(const TransferMatrix& rhs) const;
    TransferMatrix power(int l) const;

    static TransferMatrix identity(int n0);

private:
    int n0_;
    std::vector<double> entries_;
};

TransferMatrix transfer_matrix(const AtomSpec& atom, const Displacement& d);

// T^l e_{n0}, by l successive triangular products.
RadialSuperposition coefficients_after_l(const AtomSpec& atom, const Displacement& d, int l);

// Successive scatters with individual displacements, all relative to the
// atom's shared scale k0.
RadialSuperposition coefficients_after_sequence(const AtomSpec& atom,
                                                std::span<const Displacement> events);

// exp(-l x0 / 2); l may be fractional (expected collision count).
double closed_form_cn0(const AtomSpec& atom, const Displacement& d, double l);

// -l x0 (n0 - 1) / n0^2 exp(-l x0 / 2). Throws DomainError for n0 = 1.
double closed_form_cn1(const AtomSpec& atom, const Displacement& d, double l);

struct CollisionCount {
    double l;     // expected number of collisions
    double sigma; // m^2
    double flux;  // 1/(m^2 s)
    double t;     // s
};

CollisionCount collisions(double sigma, double flux, double t);

// Plot-ready time series.
struct EvolutionSeries {
    std::vector<double> t;
    std::vector<double> c_n0;
    std::vector<double> c_n0_minus_1; // 0 when n0 = 1
    std::vector<double> deficit;      // 1 - C_{n0}^2
    double rate = 0.0;                // C_{n0}(t) = exp(-rate t), 1/s

    std::size_t size() const noexcept { return t.size(); }
};

// Series for C_{n0}(t) = exp(-rate t) with a collision rate and per-event
// x0; shared by every channel.
EvolutionSeries evolve_with_rate(int n0, double x0, double collision_rate,
                                 std::span<const double> t_grid);

EvolutionSeries survival_vs_time(const AtomSpec& atom, const Displacement& d, double sigma,
                                 double flux, std::span<const double> t_grid);

// Uniform grid of `points` samples on [0, t_max].
std::vector<double> linear_time_grid(double t_max, int points);

} // namespace scatdeco
