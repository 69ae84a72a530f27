#pragma once

#include <span>
#include <string>
#include <vector>

#include "scatdeco/projection.hpp"

// Brute-force reference paths. Nothing here calls the production special
// functions: Laguerre polynomials come from the explicit power sum in
// extended precision, factorials from exact big integers, overlaps from
// quadrature. Slow by construction.
namespace scatdeco::oracle {

struct ResidualRow {
    int l;
    double matrix_value;
    double closed_form;
    double relative_error;
};

struct VerificationReport {
    std::string check_name;
    std::string grid_description;
    double max_relative_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::vector<ResidualRow> table; // informational rows, if the check has any

    void finalize() { passed = max_relative_error <= tolerance; }
};

// sum_i (-1)^i C(n+alpha, n-i) x^i / i!, summed at a precision chosen from
// the size of the largest term.
double laguerre_explicit(int n, int alpha, double x);

// ln(m m!) - ln(n0 n0!) from exact factorials.
double log_factorial_ratio_exact(int m, int n0);

// Expansion coefficients of psi(r + r_d) on the same-scale basis B_n,
//   C_n = <B_n, psi(. + r_d)> / <B_n, B_n>,
// with <f, g> = int f g r dr, the measure in which the B_n are orthogonal.
// Gauss-Laguerre with node doubling 200 -> 1600; throws NumericalError if
// successive estimates never agree to 1e-10.
double overlap_oracle(const AtomSpec& atom, const Displacement& d, int n);

// All of C_1 .. C_{n_max} in one pass (n_max may exceed n0).
std::vector<double> overlap_coefficients(const AtomSpec& atom, const Displacement& d, int n_max);

// Two-scatter coefficient as the explicit double sum over intermediate levels.
double two_scatter_coefficient(const AtomSpec& atom, const Displacement& d, int n);

// Displaced-state expansion residual over n0 = 1..n0_max and each x0, on a
// 64-point grid spanning [0, 40 n0 a0]; tolerance 1e-8.
VerificationReport verify_expansion_identity(int n0_max, std::span<const double> x0_grid);

// Closed-form coefficients vs overlap_oracle for every n <= n0 with
// |C_n| > 1e-12; tolerance 1e-7. inject_fault perturbs the closed form by
// 1e-3 relative (negative control).
VerificationReport verify_coefficients_vs_quadrature(int n0, double x0, bool inject_fault = false);

// Transfer-matrix powers vs the closed forms for C_{n0} (tolerance 1e-12)
// and C_{n0-1} at l = 1; C_{n0-1} residuals for l = 2..l_max are tabulated.
VerificationReport verify_multiscatter(int n0, double x0, int l_max);

// Two-scatter transfer-matrix coefficients vs the explicit double sum.
VerificationReport verify_two_scatter(int n0, double x0);

// Recurrence vs explicit sum for n <= n_max on the given x grid.
VerificationReport verify_laguerre(int n_max, std::span<const double> x_grid);

// L_n^{-1}(x) by recurrence vs -(x/n) L_{n-1}^1(x), n = 1..n_max.
VerificationReport verify_laguerre_identity(int n_max, std::span<const double> x_grid);

// log_factorial_ratio vs exact big-integer factorials for 1 <= m <= n0 <= n0_max.
VerificationReport verify_log_factorial(int n0_max);

} // namespace scatdeco::oracle
