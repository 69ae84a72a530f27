#include "scatdeco/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/evolution.hpp"
#include "scatdeco/quadrature.hpp"
#include "scatdeco/special_functions.hpp"

namespace scatdeco::oracle {

namespace mp = boost::multiprecision;

namespace {

using mp50 = mp::number<mp::cpp_bin_float<50>, mp::et_off>;
using mp100 = mp::number<mp::cpp_bin_float<100>, mp::et_off>;
using mp200 = mp::number<mp::cpp_bin_float<200>, mp::et_off>;
using mp400 = mp::number<mp::cpp_bin_float<400>, mp::et_off>;

constexpr double kNucleusMass = 1.66e-27;

mp::cpp_int factorial(int n) {
    mp::cpp_int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// C(a, b) for a >= -1, b >= 0, with C(-1, 0) = 1.
mp::cpp_int binomial(int a, int b) {
    if (b < 0) return 0;
    if (a == -1) return (b % 2 == 0) ? 1 : -1;
    if (b > a) return 0;
    mp::cpp_int num = 1;
    for (int k = 0; k < b; ++k) num *= (a - k);
    return num / factorial(b);
}

double log_sum_factorial(int n) {
    double s = 0.0;
    for (int k = 2; k <= n; ++k) s += std::log(double(k));
    return s;
}

// log10 of sum_i |C(n+alpha, n-i)| x^i / i!, the scale the power sum must
// resolve.
double log10_term_mass(int n, int alpha, double x) {
    const double ax = std::max(std::abs(x), 1e-300);
    double best = -1e300;
    double acc = 0.0;
    std::vector<double> logs;
    for (int i = 0; i <= n; ++i) {
        const int a = n + alpha;
        const int b = n - i;
        if (a >= 0 && b > a) continue;
        const double log_binom =
            a >= 0 ? log_sum_factorial(a) - log_sum_factorial(b) - log_sum_factorial(a - b) : 0.0;
        const double lt = log_binom + i * std::log(ax) - log_sum_factorial(i);
        logs.push_back(lt);
        best = std::max(best, lt);
    }
    for (double lt : logs) acc += std::exp(lt - best);
    return (best + std::log(acc)) / std::log(10.0);
}

// Digits for a power sum of the given term mass.
int digits_for(double log10_mass) { return int(std::ceil(std::max(log10_mass, 0.0))) + 40; }

template <class Real>
struct PowerSumLaguerre {
    std::vector<Real> coef; // coef[i] = (-1)^i C(n+alpha, n-i) / i!

    PowerSumLaguerre(int n, int alpha) : coef(std::size_t(n + 1)) {
        for (int i = 0; i <= n; ++i) {
            Real c = Real(binomial(n + alpha, n - i)) / Real(factorial(i));
            coef[std::size_t(i)] = (i % 2 == 0) ? c : Real(-c);
        }
    }

    // powers[i] = x^i
    Real operator()(const std::vector<Real>& powers) const {
        Real s = 0;
        for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * powers[i];
        return s;
    }

    Real operator()(const Real& x) const {
        std::vector<Real> p(coef.size());
        Real xi = 1;
        for (auto& v : p) {
            v = xi;
            xi *= x;
        }
        return (*this)(p);
    }
};

template <class F>
auto dispatch_precision(int digits, F&& f) {
    if (digits <= 50) return f(mp50{});
    if (digits <= 100) return f(mp100{});
    if (digits <= 200) return f(mp200{});
    return f(mp400{});
}

template <class Real>
std::vector<Real> powers_of(const Real& x, int max_degree) {
    std::vector<Real> p(std::size_t(max_degree + 1));
    Real xi = 1;
    for (auto& v : p) {
        v = xi;
        xi *= x;
    }
    return p;
}

struct OverlapPass {
    std::vector<double> coefficients;
    std::vector<double> bound; // Cauchy-Schwarz bound on |C_n|
};

template <class Real>
OverlapPass overlap_pass(int n0, double x0, int n_max, const GaussLaguerreRule& rule) {
    std::vector<PowerSumLaguerre<Real>> basis;
    std::vector<Real> basis_norm; // 1 / (n n!)
    for (int n = 1; n <= n_max; ++n) {
        basis.emplace_back(n - 1, 1);
        basis_norm.push_back(Real(1) / Real(factorial(n) * n));
    }
    const PowerSumLaguerre<Real> initial(n0 - 1, 1);
    const Real initial_norm = exp(Real(-0.5 * x0)) / Real(factorial(n0) * n0);

    std::vector<Real> num(std::size_t(n_max), Real(0));
    std::vector<Real> den(std::size_t(n_max), Real(0));
    Real psi_sq = 0;
    const int max_degree = std::max(n_max - 1, 0);
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const Real x = rule.nodes[i];
        const Real wx = exp(Real(rule.log_weights[i])) * x;
        const Real psi = initial_norm * initial(Real(x + Real(x0)));
        psi_sq += wx * psi * psi;
        const auto pw = powers_of(x, max_degree);
        for (int n = 1; n <= n_max; ++n) {
            const Real b = basis_norm[std::size_t(n - 1)] * basis[std::size_t(n - 1)](pw);
            num[std::size_t(n - 1)] += wx * b * psi;
            den[std::size_t(n - 1)] += wx * b * b;
        }
    }
    OverlapPass out;
    for (int n = 0; n < n_max; ++n) {
        const auto k = std::size_t(n);
        out.coefficients.push_back(static_cast<double>(num[k] / den[k]));
        out.bound.push_back(static_cast<double>(sqrt(psi_sq / den[k])));
    }
    return out;
}

char* format(char* buf, std::size_t size, const char* fmt, double a) {
    std::snprintf(buf, size, fmt, a);
    return buf;
}

std::string join_reals(std::span<const double> v) {
    std::string s;
    char buf[32];
    for (double x : v) s += (s.empty() ? "" : ",") + std::string(format(buf, sizeof buf, "%g", x));
    return s;
}

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

} // namespace

double laguerre_explicit(int n, int alpha, double x) {
    if (n < 0) throw DomainError("laguerre_explicit: degree must be >= 0");
    if (alpha < -1) throw DomainError("laguerre_explicit: alpha must be >= -1");
    return dispatch_precision(digits_for(2.0 * log10_term_mass(n, alpha, x)), [&](auto tag) {
        using Real = decltype(tag);
        return static_cast<double>(PowerSumLaguerre<Real>(n, alpha)(Real(x)));
    });
}

double log_factorial_ratio_exact(int m, int n0) {
    if (m < 1 || m > n0) throw DomainError("log_factorial_ratio_exact: need 1 <= m <= n0");
    const mp::cpp_int num = factorial(m) * m;
    const mp::cpp_int den = factorial(n0) * n0;
    return static_cast<double>(log(mp200(num)) - log(mp200(den)));
}

std::vector<double> overlap_coefficients(const AtomSpec& atom, const Displacement& d, int n_max) {
    if (n_max < 1) throw DomainError("overlap_coefficients: n_max must be >= 1");
    d.check_compatible(atom);
    const int n0 = atom.n0();
    const double x0 = d.x0();
    const int degree = std::max(n_max, n0) - 1;

    auto run = [&](std::size_t nodes) {
        const auto& rule = gauss_laguerre(nodes);
        const double reach = std::min(rule.nodes.back(), 4.0 * degree + 8.0) + x0;
        return dispatch_precision(digits_for(log10_term_mass(degree, 1, reach)), [&](auto tag) {
            return overlap_pass<decltype(tag)>(n0, x0, n_max, rule);
        });
    };

    OverlapPass previous = run(kDefaultNodes);
    double worst = 0.0;
    for (std::size_t nodes = 2 * kDefaultNodes; nodes <= kMaxNodes; nodes *= 2) {
        OverlapPass current = run(nodes);
        worst = 0.0;
        bool converged = true;
        double largest = 0.0;
        for (double c : current.coefficients) largest = std::max(largest, std::abs(c));
        for (std::size_t k = 0; k < current.coefficients.size(); ++k) {
            const double a = current.coefficients[k];
            const double b = previous.coefficients[k];
            const double allowed = kQuadratureTolerance * std::max(std::abs(a), std::abs(b)) +
                                   1e-14 * largest + 1e-9 * current.bound[k];
            const double denom = std::max({std::abs(a), std::abs(b), 1e-300});
            worst = std::max(worst, std::abs(a - b) / denom);
            if (std::abs(a - b) > allowed) converged = false;
        }
        if (converged) return current.coefficients;
        previous = std::move(current);
    }
    throw NumericalError("overlap quadrature did not converge up to " + std::to_string(kMaxNodes) +
                             " nodes",
                         worst);
}

double overlap_oracle(const AtomSpec& atom, const Displacement& d, int n) {
    if (n < 1) throw DomainError("overlap_oracle: n must be >= 1");
    return overlap_coefficients(atom, d, n).back();
}

double two_scatter_coefficient(const AtomSpec& atom, const Displacement& d, int n) {
    d.check_compatible(atom);
    const int n0 = atom.n0();
    if (n < 1 || n > n0) return 0.0;
    const double x0 = d.x0();
    return dispatch_precision(digits_for(2.0 * log10_term_mass(n0, -1, x0)), [&](auto tag) {
        using Real = decltype(tag);
        const Real x = x0;
        Real sum = 0;
        for (int np = n; np <= n0; ++np)
            sum += PowerSumLaguerre<Real>(n0 - np, -1)(x) * PowerSumLaguerre<Real>(np - n, -1)(x);
        const Real ratio = Real(factorial(n) * n) / Real(factorial(n0) * n0);
        return static_cast<double>(exp(Real(-x0)) * ratio * sum);
    });
}

VerificationReport verify_expansion_identity(int n0_max, std::span<const double> x0_grid) {
    if (n0_max < 1) throw DomainError("verify_expansion_identity: n0_max must be >= 1");
    VerificationReport rep;
    rep.check_name = "expansion_identity";
    rep.grid_description = "n0=1.." + std::to_string(n0_max) + "; x0={" + join_reals(x0_grid) +
                           "}; 64-point r grid on [0, 40 n0 a0]";
    rep.tolerance = 1e-8;
    for (int n0 = 1; n0 <= n0_max; ++n0) {
        const auto atom = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
        std::vector<double> grid(64);
        const double r_max = 40.0 * n0 * phys.bohr_radius;
        for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = r_max * double(i) / 63.0;
        for (double x0 : x0_grid) {
            const auto d = Displacement::from_x0(atom, x0);
            rep.max_relative_error = std::max(rep.max_relative_error, expansion_identity_residual(atom, d, grid));
        }
    }
    rep.finalize();
    return rep;
}

VerificationReport verify_coefficients_vs_quadrature(int n0, double x0, bool inject_fault) {
    VerificationReport rep;
    char buf[64];
    rep.check_name = "coefficients_vs_quadrature";
    rep.grid_description = "n0=" + std::to_string(n0) + "; x0=" + format(buf, sizeof buf, "%g", x0) +
                           "; all n<=n0 with |C_n|>1e-12";
    rep.tolerance = 1e-7;
    const auto atom = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
    const auto d = Displacement::from_x0(atom, x0);
    const auto closed = single_scatter_coefficients(atom, d);
    const auto reference = overlap_coefficients(atom, d, n0);
    for (int n = 1; n <= n0; ++n) {
        double c = closed.c(n);
        if (inject_fault) c *= 1.0 + 1e-3;
        if (std::abs(c) <= 1e-12) continue;
        rep.max_relative_error = std::max(rep.max_relative_error, rel_err(c, reference[std::size_t(n - 1)]));
    }
    rep.finalize();
    return rep;
}

VerificationReport verify_multiscatter(int n0, double x0, int l_max) {
    if (l_max < 1) throw DomainError("verify_multiscatter: l_max must be >= 1");
    VerificationReport rep;
    char buf[64];
    rep.check_name = "multiscatter";
    rep.grid_description = "n0=" + std::to_string(n0) + "; x0=" + format(buf, sizeof buf, "%g", x0) +
                           "; l=1.." + std::to_string(l_max) +
                           "; C_n0 asserted for all l, C_(n0-1) asserted at l=1, tabulated for l>=2";
    rep.tolerance = 1e-12;
    const auto atom = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
    const auto d = Displacement::from_x0(atom, x0);
    const auto t = transfer_matrix(atom, d);
    std::vector<double> state(std::size_t(n0), 0.0);
    state.back() = 1.0;
    for (int l = 1; l <= l_max; ++l) {
        state = t.apply(state);
        rep.max_relative_error =
            std::max(rep.max_relative_error, rel_err(state.back(), closed_form_cn0(atom, d, l)));
        if (n0 < 2) continue;
        const double matrix_value = state[std::size_t(n0 - 2)];
        const double closed = closed_form_cn1(atom, d, l);
        const double err = rel_err(matrix_value, closed);
        if (l == 1) rep.max_relative_error = std::max(rep.max_relative_error, err);
        else rep.table.push_back({l, matrix_value, closed, err});
    }
    rep.finalize();
    return rep;
}

VerificationReport verify_two_scatter(int n0, double x0) {
    VerificationReport rep;
    char buf[64];
    rep.check_name = "two_scatter_double_sum";
    rep.grid_description = "n0=" + std::to_string(n0) + "; x0=" + format(buf, sizeof buf, "%g", x0) +
                           "; all n<=n0 with |C_n|>1e-12";
    rep.tolerance = 1e-12;
    const auto atom = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
    const auto d = Displacement::from_x0(atom, x0);
    const auto matrix = coefficients_after_l(atom, d, 2);
    for (int n = 1; n <= n0; ++n) {
        if (std::abs(matrix.c(n)) <= 1e-12) continue;
        rep.max_relative_error =
            std::max(rep.max_relative_error, rel_err(matrix.c(n), two_scatter_coefficient(atom, d, n)));
    }
    rep.finalize();
    return rep;
}

VerificationReport verify_laguerre(int n_max, std::span<const double> x_grid) {
    VerificationReport rep;
    rep.check_name = "laguerre_recurrence_vs_power_sum";
    rep.grid_description = "n=0.." + std::to_string(n_max) + "; alpha={-1,1}; x={" + join_reals(x_grid) + "}";
    rep.tolerance = 1e-10;
    for (int alpha : {-1, 1})
        for (int n = 0; n <= n_max; ++n)
            for (double x : x_grid) {
                const double exact = laguerre_explicit(n, alpha, x);
                if (exact == 0.0 && laguerre(n, alpha, x) == 0.0) continue;
                rep.max_relative_error = std::max(rep.max_relative_error, rel_err(laguerre(n, alpha, x), exact));
            }
    rep.finalize();
    return rep;
}

VerificationReport verify_laguerre_identity(int n_max, std::span<const double> x_grid) {
    VerificationReport rep;
    rep.check_name = "laguerre_alpha_minus_one_identity";
    rep.grid_description = "n=1.." + std::to_string(n_max) + "; x={" + join_reals(x_grid) + "}";
    rep.tolerance = 1e-10;
    for (int n = 1; n <= n_max; ++n)
        for (double x : x_grid) {
            const double via_alpha_one = -(x / n) * laguerre(n - 1, 1, x);
            rep.max_relative_error = std::max(rep.max_relative_error, rel_err(laguerre(n, -1, x), via_alpha_one));
        }
    rep.finalize();
    return rep;
}

VerificationReport verify_log_factorial(int n0_max) {
    VerificationReport rep;
    rep.check_name = "log_factorial_ratio_vs_big_integer";
    rep.grid_description = "1<=m<=n0<=" + std::to_string(n0_max);
    rep.tolerance = 1e-12;
    for (int n0 = 1; n0 <= n0_max; ++n0)
        for (int m = 1; m <= n0; ++m) {
            const double exact = log_factorial_ratio_exact(m, n0);
            const double value = log_factorial_ratio(m, n0);
            if (exact == 0.0 && value == 0.0) continue;
            rep.max_relative_error = std::max(rep.max_relative_error, rel_err(value, exact));
        }
    rep.finalize();
    return rep;
}

} // namespace scatdeco::oracle
