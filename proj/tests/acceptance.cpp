// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: scatdeco_acceptance <path-to-scatdeco-cli>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "scatdeco/constants.hpp"
#include "scatdeco/evolution.hpp"
#include "scatdeco/kinematics.hpp"
#include "scatdeco/oracle.hpp"
#include "scatdeco/scenarios.hpp"
#include "scatdeco/units.hpp"

using namespace scatdeco;

namespace {

constexpr double kNucleusMass = 1.66e-27;
constexpr double kNeutronMass = 1.67e-27;

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome expansion_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> x0{0.01, 0.1, 0.5, 1.0};
    const auto r = oracle::verify_expansion_identity(30, x0);
    const double dt = seconds_since(t0);
    return {r.passed && dt < 10.0,
            "max residual " + fmt("%.3g", r.max_relative_error) + " (< 1e-8), " + fmt("%.2f", dt) + " s (< 10 s)"};
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool ok = true;
    for (int n0 : {5, 10, 20, 40})
        for (double x0 : {0.1, 0.5, 1.0}) {
            const auto r = oracle::verify_coefficients_vs_quadrature(n0, x0);
            worst = std::max(worst, r.max_relative_error);
            ok = ok && r.passed;
        }
    const double dt = seconds_since(t0);
    return {ok && dt < 60.0,
            "max relative error " + fmt("%.3g", worst) + " (< 1e-7), " + fmt("%.2f", dt) + " s (< 60 s)"};
}

Outcome trivial_limit() {
    bool ok = true;
    double worst_other = 0.0, worst_diag = 0.0;
    for (int n0 = 1; n0 <= 60; ++n0) {
        const auto a = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
        const auto s = single_scatter_coefficients(a, Displacement::none());
        ok = ok && s.c(n0) == 1.0;
        for (int n = 1; n < n0; ++n) worst_other = std::max(worst_other, std::abs(s.c(n)));
        for (double x0 : {1e-8, 1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            const double c = single_scatter_coefficients(a, Displacement::from_x0(a, x0)).c(n0);
            worst_diag = std::max(worst_diag, std::abs(c - std::exp(-x0 / 2)) / std::exp(-x0 / 2));
        }
    }
    ok = ok && worst_other < 1e-14 && worst_diag < 1e-14;
    return {ok, std::string("C_n0(x0=0) ") + (ok ? "== 1" : "!= 1") + ", max |C_n<n0| " + fmt("%.3g", worst_other) +
                    ", max |C_n0 - exp(-x0/2)| rel " + fmt("%.3g", worst_diag) + " (n0 = 1..60)"};
}

Outcome multiscatter() {
    bool ok = true;
    double worst = 0.0, worst_cn1 = 0.0;
    std::ofstream archive("cn1_residuals.csv");
    archive << "n0,x0,l,matrix_value,closed_form,relative_error\n";
    for (int n0 = 1; n0 <= 20; ++n0)
        for (double x0 : {0.01, 0.1, 0.5, 1.0}) {
            const auto r = oracle::verify_multiscatter(n0, x0, 20);
            ok = ok && r.passed;
            worst = std::max(worst, r.max_relative_error);
            for (const auto& row : r.table) {
                worst_cn1 = std::max(worst_cn1, row.relative_error);
                archive << n0 << ',' << fmt("%.17g", x0) << ',' << row.l << ',' << fmt("%.17g", row.matrix_value)
                        << ',' << fmt("%.17g", row.closed_form) << ',' << fmt("%.17g", row.relative_error) << '\n';
            }
        }
    ok = ok && archive.good();
    return {ok, "max relative error " + fmt("%.3g", worst) + " (< 1e-12, n0 <= 20, l <= 20); C_(n0-1) l >= 2 residual max " +
                    fmt("%.3g", worst_cn1) + " archived to cn1_residuals.csv"};
}

Outcome non_exponential() {
    const int n0 = 10;
    const double x0 = 0.1;
    const auto a = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
    const auto t = transfer_matrix(a, Displacement::from_x0(a, x0));
    std::vector<double> v(std::size_t(n0), 0.0), y;
    v.back() = 1.0;
    for (int l = 1; l <= 20; ++l) {
        v = t.apply(v);
        y.push_back(std::abs(v[std::size_t(n0 - 2)]));
    }
    // ln y is concave in l, so the minimax straight line in log space is the
    // end-to-end chord shifted down by half its largest gap.
    std::vector<double> ly;
    for (double yi : y) ly.push_back(std::log(yi));
    const double slope = (ly.back() - ly.front()) / 19.0;
    double gap = 0.0;
    for (int i = 0; i < 20; ++i) gap = std::max(gap, ly[std::size_t(i)] - (ly.front() + slope * i));
    double exp_residual = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double fit = std::exp(ly.front() + gap / 2 + slope * i);
        exp_residual = std::max(exp_residual, std::abs(fit - y[std::size_t(i)]) / y[std::size_t(i)]);
    }
    // A l exp(-l x0 / 2), amplitude by least squares.
    double num = 0.0, den = 0.0;
    for (int l = 1; l <= 20; ++l) {
        const double g = l * std::exp(-l * x0 / 2);
        num += g * y[std::size_t(l - 1)];
        den += g * g;
    }
    double form_residual = 0.0;
    for (int l = 1; l <= 20; ++l) {
        const double fit = num / den * l * std::exp(-l * x0 / 2);
        form_residual = std::max(form_residual, std::abs(fit - y[std::size_t(l - 1)]) / y[std::size_t(l - 1)]);
    }
    return {exp_residual > 1e-3 && form_residual < 1e-12,
            "best exponential leaves " + fmt("%.3g", exp_residual) + " (> 1e-3), l exp(-l x0/2) leaves " +
                fmt("%.3g", form_residual) + " (< 1e-12); n0 = 10, x0 = 0.1"};
}

Outcome survival_ordering() {
    const std::vector<double> energies{1e-6, 1e-3, 0.025, 0.5, 1.0};
    bool ok = true;
    for (double ev : energies) {
        const auto sweep = n0_sweep(kNucleusMass, ScatterEnergy::electronvolts(ev), 1, 60);
        for (std::size_t i = 1; i < sweep.size(); ++i) ok = ok && sweep[i].p_n0 < sweep[i - 1].p_n0;
    }
    for (int n0 = 1; n0 <= 60; ++n0) {
        const auto a = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
        double prev = 2.0;
        for (double ev : energies) {
            const double c = survival_amplitude(a, ScatterEnergy::electronvolts(ev));
            ok = ok && c * c < prev;
            prev = c * c;
        }
    }
    return {ok, "|C_n0|^2 strictly decreasing in n0 = 1..60 and in dE over {1e-6, 1e-3, 0.025, 0.5, 1} eV"};
}

Outcome lower_level_peak() {
    struct Best {
        double v = 0.0;
        InteriorMaximum peak{};
        double delta_e_ev = 0.0;
    };
    std::optional<Best> best;
    for (int i = 0; i <= 500; ++i) {
        const double v = std::pow(10.0, 2.0 + 5.0 * i / 500.0);
        const MassiveChannel ch{kNeutronMass, v, 1.0, 1.0};
        std::vector<SweepPoint> sweep;
        double ev = 0.0;
        for (int n0 = 1; n0 <= 60; ++n0) {
            const auto a = AtomSpec::from_nucleus_mass(n0, kNucleusMass);
            const auto e = massive_energy_transfer(a, ch);
            ev = e.delta_E / phys.electronvolt;
            const auto r = displacement_radius(a, e);
            const auto s = single_scatter_coefficients(a, r.displacement(a));
            const double c1 = n0 >= 2 ? s.c(n0 - 1) : 0.0;
            sweep.push_back({n0, s.c(n0) * s.c(n0), c1 * c1, r.r_d_over_a0, r.validity, r.exceeds_ionization});
        }
        const auto peak = interior_maximum(sweep);
        if (!peak) continue;
        if (!best || std::abs(peak->n0 - 25) < std::abs(best->peak.n0 - 25)) best = Best{v, *peak, ev};
    }
    if (!best) return {false, "no velocity in [1e2, 1e7] m/s gives an interior maximum"};
    const bool ok = std::abs(best->peak.n0 - 25) <= 10;
    return {ok, "interior maximum at n0 = " + std::to_string(best->peak.n0) + " for v = " + fmt("%.4g", best->v) +
                    " m/s (dE = " + fmt("%.3g", best->delta_e_ev) + " eV), r_d/a0 = " +
                    fmt("%.3g", best->peak.r_d_over_a0) + ", r_d/(n0 a0) = " + fmt("%.3g", best->peak.r_d_over_n0_a0) +
                    " (target 25 +/- 10)"};
}

Outcome scenario_orderings() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto atom = AtomSpec::from_nucleus_mass(60, kNucleusMass);
    auto grid = linear_time_grid(to_si(1.0, "yr"), 101);
    grid.erase(grid.begin()); // t > 0
    auto deficits = [&](std::string_view name) { return channel_survival(atom, preset(name).channel, grid).series.deficit; };
    const auto solar = deficits("solar");
    const auto lab = deficits("lab_lights");
    const auto cmb = deficits("cmb");
    const auto neutrons = deficits("cosmic_neutrons");
    const auto axion = deficits("axion_dm");
    bool photon_order = true, massive_order = true, massive_over_photon = true;
    std::string violation;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        photon_order = photon_order && solar[i] > lab[i] && lab[i] > cmb[i];
        massive_order = massive_order && axion[i] > neutrons[i];
        const double min_massive = std::min(axion[i], neutrons[i]);
        const double max_photon = std::max({solar[i], lab[i], cmb[i]});
        if (!(min_massive > max_photon) && massive_over_photon) {
            massive_over_photon = false;
            violation = "; at t = " + fmt("%.4g", grid[i]) + " s cosmic_neutrons " + fmt("%.3g", neutrons[i]) +
                        " <= solar " + fmt("%.3g", solar[i]);
        }
    }
    const double dt = seconds_since(t0);
    auto rate = [&](std::string_view n) { return fmt("%.2g", channel_rates(atom, preset(n).channel).compositional); };
    const std::string rates = "rates/s solar " + rate("solar") + ", lab " + rate("lab_lights") + ", cmb " + rate("cmb") +
                              ", neutrons " + rate("cosmic_neutrons") + ", axion " + rate("axion_dm");
    std::string detail = std::string("solar > lab > cmb ") + (photon_order ? "holds" : "fails") +
                         ", axion > neutrons " + (massive_order ? "holds" : "fails") +
                         ", every massive > every photon " + (massive_over_photon ? "holds" : "fails") + violation +
                         "; " + rates + "; " + fmt("%.2f", dt) + " s (< 5 s)";
    return {photon_order && massive_order && massive_over_photon && dt < 5.0, detail};
}

Outcome nu_independence() {
    const auto atom = AtomSpec::from_nucleus_mass(60, kNucleusMass);
    const double eta = to_si(8.49, "MeV/cm^3");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, worst_mismatch = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double nu = std::pow(10.0, 9.0 + 6.0 * i / 60.0);
        const auto r = photon_rates(atom, PhotonChannel{eta, nu});
        lo = std::min(lo, r.compositional);
        hi = std::max(hi, r.compositional);
        worst_mismatch = std::max(worst_mismatch, std::abs(r.compositional - r.direct) / r.direct);
    }
    const double spread = (hi - lo) / hi;
    return {spread < 1e-10 && worst_mismatch < 1e-6,
            "spread over nu in [1e9, 1e15] Hz " + fmt("%.3g", spread) + " (< 1e-10), direct vs compositional " +
                fmt("%.3g", worst_mismatch) + " (< 1e-6)"};
}

struct Captured {
    int status;
    std::string out;
};

Captured capture(const std::string& cmd) {
    Captured c{-1, {}};
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return c;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) c.out.append(buf.data(), n);
    const int st = pclose(p);
    c.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return c;
}

std::string first_header(const std::string& csv) {
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') return line;
    return {};
}

Outcome determinism(const std::string& cli) {
    struct Case {
        std::string args;
        std::string header;
    };
    const std::vector<Case> cases{
        {"coefficients --n0 20 --delta-e 0.025", "n,c,c_squared"},
        {"survival --particle-mass 1.67e-27 --velocity 1e4", "n0,p_n0,p_n0_minus_1,r_d_over_a0,validity"},
        {"evolve --n0 10 --x0 0.1", "l,c_n0,c_n0_minus_1,c_n0_closed_form,c_n0_minus_1_closed_form"},
        {"evolve --n0 10 --x0 0.1 --sigma 3 --flux 2e4", "t,c_n0,c_n0_minus_1,deficit"},
        {"scenario --preset solar", "t,c_n0,c_n0_minus_1,deficit"},
    };
    bool ok = true;
    std::string problems;
    for (const auto& c : cases) {
        const auto a = capture(cli + " " + c.args);
        const auto b = capture(cli + " " + c.args);
        if (a.status != 0 || a.out != b.out) ok = false, problems += " [" + c.args + ": not reproducible]";
        if (first_header(a.out) != c.header) ok = false, problems += " [" + c.args + ": header mismatch]";
    }
    const auto v = capture(cli + " verify");
    if (v.status != 0) ok = false, problems += " [verify exit " + std::to_string(v.status) + "]";
    return {ok, ok ? "5 commands byte-identical across runs, headers match, verify exits 0" : "problems:" + problems};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <scatdeco-cli>\n", argv[0]);
        return 2;
    }
    const std::string cli = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"expansion identity", expansion_identity},
        {"oracle equivalence", oracle_equivalence},
        {"trivial limit", trivial_limit},
        {"multi-scatter consistency", multiscatter},
        {"non-exponential fingerprint", non_exponential},
        {"survival ordering in n0 and dE", survival_ordering},
        {"interior maximum of the lower level", lower_level_peak},
        {"scenario orderings", scenario_orderings},
        {"frequency independence", nu_independence},
        {"determinism and interface", [&] { return determinism(cli); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, "exception"};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.passed ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - std::size_t(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
