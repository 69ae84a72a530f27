#pragma once

#include <span>

namespace scatdeco {

/// Associated Laguerre polynomial L_n^alpha(x) by forward three-term
/// recurrence. alpha may be any integer >= -1. Throws DomainError for n < 0
/// or alpha < -1.
double laguerre(int n, int alpha, double x);

/// Fills out[k] = L_k^alpha(x) for k = 0 .. out.size()-1.
void laguerre_sequence(int alpha, double x, std::span<double> out);

/// ln(n!) by summed logarithms.
double log_factorial(int n);

/// ln(m * m!) - ln(n0 * n0!), for 1 <= m <= n0. The ratio itself underflows
/// for large n0, so callers exponentiate only after combining with other
/// factors.
double log_factorial_ratio(int m, int n0);

/// Normalized hydrogenic s-state radial function
///   R_n(r) = -k^{3/2} / (sqrt(2) n) * exp(-k r / 2) * L_{n-1}^1(k r),
/// with k = 2 / (n a0) for the true eigenstate. Sign follows the
/// convention that makes R_1(0) negative.
double hydrogenic_radial(int n, double k, double r);

} // namespace scatdeco
