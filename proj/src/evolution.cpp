#include "scatdeco/evolution.hpp"

#include <cmath>
#include <string>

#include "scatdeco/errors.hpp"
#include "scatdeco/special_functions.hpp"

namespace scatdeco {

TransferMatrix::TransferMatrix(int n0, std::vector<double> dense_row_major)
    : n0_(n0), entries_(std::move(dense_row_major)) {
    if (n0 < 1 || entries_.size() != std::size_t(n0) * std::size_t(n0))
        throw DomainError("TransferMatrix: size mismatch");
}

TransferMatrix TransferMatrix::identity(int n0) {
    std::vector<double> e(std::size_t(n0) * std::size_t(n0), 0.0);
    for (int i = 0; i < n0; ++i) e[std::size_t(i) * std::size_t(n0) + std::size_t(i)] = 1.0;
    return TransferMatrix(n0, std::move(e));
}

std::vector<double> TransferMatrix::apply(std::span<const double> v) const {
    if (v.size() != std::size_t(n0_)) throw DomainError("TransferMatrix::apply: size mismatch");
    std::vector<double> y(v.size(), 0.0);
    for (int n = 1; n <= n0_; ++n) {
        double s = 0.0;
        for (int np = n; np <= n0_; ++np) s += (*this)(n, np) * v[std::size_t(np - 1)];
        y[std::size_t(n - 1)] = s;
    }
    return y;
}

TransferMatrix TransferMatrix::operator*(const TransferMatrix& rhs) const {
    if (rhs.n0_ != n0_) throw DomainError("TransferMatrix: size mismatch");
    const auto n = std::size_t(n0_);
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) {
            const double a = entries_[i * n + k];
            if (a == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) out[i * n + j] += a * rhs.entries_[k * n + j];
        }
    return TransferMatrix(n0_, std::move(out));
}

TransferMatrix TransferMatrix::power(int l) const {
    if (l < 0) throw DomainError("TransferMatrix::power: l must be >= 0");
    TransferMatrix result = identity(n0_);
    for (int i = 0; i < l; ++i) result = result * (*this);
    return result;
}

TransferMatrix transfer_matrix(const AtomSpec& atom, const Displacement& d) {
    d.check_compatible(atom);
    const int n0 = atom.n0();
    const double x0 = d.x0();
    const auto dim = std::size_t(n0);

    std::vector<double> lag(dim);
    laguerre_sequence(-1, x0, lag);
    const double decay = std::exp(-0.5 * x0);

    std::vector<double> e(dim * dim, 0.0);
    for (int np = 1; np <= n0; ++np) {
        for (int n = 1; n < np; ++n)
            e[std::size_t(n - 1) * dim + std::size_t(np - 1)] =
                std::exp(-0.5 * x0 + log_factorial_ratio(n, np)) * lag[std::size_t(np - n)];
        e[std::size_t(np - 1) * dim + std::size_t(np - 1)] = decay;
    }
    return TransferMatrix(n0, std::move(e));
}

namespace {

RadialSuperposition unit_state(const AtomSpec& atom) {
    RadialSuperposition s{atom.n0(), atom.k0(), std::vector<double>(std::size_t(atom.n0()), 0.0)};
    s.coefficients.back() = 1.0;
    return s;
}

} // namespace

RadialSuperposition coefficients_after_l(const AtomSpec& atom, const Displacement& d, int l) {
    if (l < 0) throw DomainError("coefficients_after_l: l must be >= 0");
    auto state = unit_state(atom);
    if (l == 0) return state;
    const auto t = transfer_matrix(atom, d);
    for (int i = 0; i < l; ++i) state.coefficients = t.apply(state.coefficients);
    return state;
}

RadialSuperposition coefficients_after_sequence(const AtomSpec& atom,
                                                std::span<const Displacement> events) {
    auto state = unit_state(atom);
    for (const auto& d : events) state.coefficients = transfer_matrix(atom, d).apply(state.coefficients);
    return state;
}

double closed_form_cn0(const AtomSpec& atom, const Displacement& d, double l) {
    if (!(l >= 0.0)) throw DomainError("closed_form_cn0: l must be >= 0");
    d.check_compatible(atom);
    return std::exp(-0.5 * l * d.x0());
}

double closed_form_cn1(const AtomSpec& atom, const Displacement& d, double l) {
    if (!(l >= 0.0)) throw DomainError("closed_form_cn1: l must be >= 0");
    if (atom.n0() < 2) throw DomainError("closed_form_cn1: n0 = 1 has no lower level");
    d.check_compatible(atom);
    const double n0 = atom.n0();
    const double x0 = d.x0();
    return -l * x0 * (n0 - 1.0) / (n0 * n0) * std::exp(-0.5 * l * x0);
}

CollisionCount collisions(double sigma, double flux, double t) {
    if (!(sigma >= 0.0) || !(flux >= 0.0) || !(t >= 0.0))
        throw DomainError("collisions: sigma, flux and t must be >= 0");
    return {sigma * flux * t, sigma, flux, t};
}

EvolutionSeries evolve_with_rate(int n0, double x0, double collision_rate,
                                 std::span<const double> t_grid) {
    if (!(collision_rate >= 0.0)) throw DomainError("collision rate must be >= 0");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0)) throw DomainError("time grid must be non-negative");
        if (i > 0 && t_grid[i] < t_grid[i - 1]) throw DomainError("time grid must be ascending");
    }
    EvolutionSeries s;
    s.rate = 0.5 * x0 * collision_rate;
    const double prefactor = n0 >= 2 ? -x0 * (n0 - 1.0) / (double(n0) * n0) : 0.0;
    for (double t : t_grid) {
        const double l = collision_rate * t;
        const double c0 = std::exp(-s.rate * t);
        s.t.push_back(t);
        s.c_n0.push_back(c0);
        s.c_n0_minus_1.push_back(prefactor * l * c0);
        // 1 - exp(-2 rate t) without cancellation for tiny rates
        s.deficit.push_back(-std::expm1(-2.0 * s.rate * t));
    }
    return s;
}

EvolutionSeries survival_vs_time(const AtomSpec& atom, const Displacement& d, double sigma,
                                 double flux, std::span<const double> t_grid) {
    d.check_compatible(atom);
    const auto count = collisions(sigma, flux, 1.0);
    return evolve_with_rate(atom.n0(), d.x0(), count.l, t_grid);
}

std::vector<double> linear_time_grid(double t_max, int points) {
    if (!(t_max >= 0.0)) throw DomainError("t_max must be >= 0");
    if (points < 1) throw DomainError("time grid needs at least one point");
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (points == 1) {
        grid[0] = t_max;
        return grid;
    }
    for (int i = 0; i < points; ++i) grid[std::size_t(i)] = t_max * double(i) / double(points - 1);
    return grid;
}

} // namespace scatdeco
