#include "scatdeco/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "scatdeco/constants.hpp"
#include "scatdeco/errors.hpp"
#include "scatdeco/evolution.hpp"
#include "scatdeco/kinematics.hpp"
#include "scatdeco/oracle.hpp"
#include "scatdeco/output.hpp"
#include "scatdeco/projection.hpp"
#include "scatdeco/scenarios.hpp"
#include "scatdeco/units.hpp"

namespace scatdeco::cli {

namespace {

constexpr double kDefaultNucleusMass = 1.66e-27;
constexpr const char* kVersion = "0.1.0";

struct CommonOptions {
    int n0 = 10;
    double nucleus_mass = kDefaultNucleusMass;
    std::string format = "csv";
    std::string output;
};

struct EventOptions {
    std::vector<double> rd;      // Bohr radii
    std::vector<double> x0;
    std::vector<double> delta_e; // eV
    double particle_mass = 0.0;  // kg
    std::vector<double> velocity;
};

// How each series obtains its per-event displacement.
struct EventSource {
    std::string label_key;
    double label_value;
    std::function<DisplacementResult(const AtomSpec&)> resolve;
};

DisplacementResult from_ratio(const AtomSpec& atom, double r_d_over_a0) {
    DisplacementResult r;
    r.r_d_over_a0 = r_d_over_a0;
    r.r_d = r_d_over_a0 * phys.bohr_radius;
    r.tau = interaction_time(atom);
    r.delta_v = r.r_d / r.tau;
    r.validity = classify_displacement(atom.n0(), r_d_over_a0);
    return r;
}

std::vector<EventSource> event_sources(const EventOptions& ev) {
    std::vector<EventSource> out;
    for (double rd : ev.rd) {
        if (!(rd >= 0.0)) throw DomainError("--rd must be >= 0");
        out.push_back({"r_d_over_a0", rd, [rd](const AtomSpec& a) { return from_ratio(a, rd); }});
    }
    for (double x0 : ev.x0) {
        if (!(x0 >= 0.0)) throw DomainError("--x0 must be >= 0");
        out.push_back({"x0", x0, [x0](const AtomSpec& a) { return from_ratio(a, 0.5 * x0 * a.n0()); }});
    }
    for (double de : ev.delta_e) {
        const auto e = ScatterEnergy::electronvolts(de);
        out.push_back({"delta_e_ev", de, [e](const AtomSpec& a) { return displacement_radius(a, e); }});
    }
    if (!ev.velocity.empty() && !(ev.particle_mass > 0.0))
        throw DomainError("--velocity requires --particle-mass > 0");
    for (double v : ev.velocity) {
        if (!(v >= 0.0)) throw DomainError("--velocity must be >= 0");
        const double m = ev.particle_mass;
        out.push_back({"velocity_m_per_s", v, [m, v](const AtomSpec& a) {
                           const MassiveChannel ch{m, v, 1.0, 1.0};
                           return displacement_radius(a, massive_energy_transfer(a, ch));
                       }});
    }
    return out;
}

void add_common(CLI::App* sub, CommonOptions& c, bool with_n0 = true) {
    if (with_n0) sub->add_option("--n0", c.n0, "initial principal quantum number")->check(CLI::Range(1, 100000));
    sub->add_option("--nucleus-mass", c.nucleus_mass, "nucleus mass in kg")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", c.output, "output file (default stdout)");
}

void add_events(CLI::App* sub, EventOptions& ev) {
    sub->add_option("--rd", ev.rd, "displacement radius in Bohr radii (repeatable)");
    sub->add_option("--x0", ev.x0, "dimensionless displacement k0 r_d (repeatable)");
    sub->add_option("--delta-e", ev.delta_e, "energy transferred to the nucleus in eV (repeatable)");
    sub->add_option("--particle-mass", ev.particle_mass, "projectile mass in kg");
    sub->add_option("--velocity", ev.velocity, "projectile velocity in m/s (repeatable)");
}

// Every option of the subcommand in definition order, with its value.
std::vector<std::pair<std::string, std::string>> parameter_echo(const CLI::App* sub) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_name();
        if (name == "--help") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
            if (opt->get_type_size() == 0) value = "true";
        } else {
            value = opt->get_default_str();
            if (value.empty() || value == "{}" || value == "[]") value = "none";
        }
        out.emplace_back("param " + name.substr(name.find_first_not_of('-')), value);
    }
    return out;
}

Table base_table(const CLI::App* sub) {
    Table t;
    t.metadata.emplace_back("command", sub->get_name());
    t.metadata.emplace_back("program", std::string("scatdeco ") + kVersion);
    t.metadata.emplace_back("constants", std::string(constant_set_version));
    for (auto& p : parameter_echo(sub)) t.metadata.push_back(std::move(p));
    return t;
}

std::string flag(bool b) { return b ? "true" : "false"; }

Table cmd_coefficients(const CLI::App* sub, const CommonOptions& c, const EventOptions& ev) {
    const auto sources = event_sources(ev);
    if (sources.empty()) throw InputError("coefficients: give --rd, --x0, --delta-e or --velocity");
    Table t = base_table(sub);
    t.columns = {"n", "c", "c_squared"};
    const auto atom = AtomSpec::from_nucleus_mass(c.n0, c.nucleus_mass);
    for (const auto& src : sources) {
        const auto res = src.resolve(atom);
        const auto d = res.displacement(atom);
        const auto sup = single_scatter_coefficients(atom, d);
        Series s;
        s.metadata = {{"event", src.label_key + "=" + format_real(src.label_value)},
                      {"x0", format_real(d.x0())},
                      {"r_d_over_a0", format_real(res.r_d_over_a0)},
                      {"validity", std::string(to_string(res.validity))},
                      {"exceeds_ionization", flag(res.exceeds_ionization)},
                      {"leakage", format_real(sup.leakage())},
                      {"delta_l_probability", format_real(delta_l_transition_probability(atom, d))}};
        for (int n = 1; n <= atom.n0(); ++n) {
            const double cn = sup.c(n);
            s.rows.push_back({Cell{(long long)n}, Cell{cn}, Cell{cn * cn}});
        }
        t.series.push_back(std::move(s));
    }
    return t;
}

Table cmd_survival(const CLI::App* sub, const CommonOptions& c, const EventOptions& ev, int n0_min,
                   int n0_max) {
    if (!ev.rd.empty() || !ev.x0.empty())
        throw InputError("survival: the sweep needs --delta-e or --particle-mass/--velocity");
    const auto sources = event_sources(ev);
    if (sources.empty()) throw InputError("survival: give --delta-e or --particle-mass with --velocity");
    if (n0_min < 1 || n0_max < n0_min) throw InputError("survival: need 1 <= --n0-min <= --n0-max");
    Table t = base_table(sub);
    t.columns = {"n0", "p_n0", "p_n0_minus_1", "r_d_over_a0", "validity"};
    for (const auto& src : sources) {
        std::vector<SweepPoint> points;
        for (int n0 = n0_min; n0 <= n0_max; ++n0) {
            const auto atom = AtomSpec::from_nucleus_mass(n0, c.nucleus_mass);
            const auto res = src.resolve(atom);
            const auto sup = single_scatter_coefficients(atom, res.displacement(atom));
            const double c0 = sup.c(n0);
            const double c1 = n0 >= 2 ? sup.c(n0 - 1) : 0.0;
            points.push_back({n0, c0 * c0, c1 * c1, res.r_d_over_a0, res.validity, res.exceeds_ionization});
        }
        Series s;
        s.metadata.emplace_back("event", src.label_key + "=" + format_real(src.label_value));
        if (const auto peak = interior_maximum(points)) {
            s.metadata.emplace_back("interior_maximum",
                                    "n0=" + std::to_string(peak->n0) +
                                        " p_n0_minus_1=" + format_real(peak->p_n0_minus_1) +
                                        " r_d_over_a0=" + format_real(peak->r_d_over_a0) +
                                        " r_d_over_n0_a0=" + format_real(peak->r_d_over_n0_a0));
        } else {
            s.metadata.emplace_back("interior_maximum", "none");
        }
        int ionizing = 0;
        for (const auto& p : points) ionizing += p.exceeds_ionization ? 1 : 0;
        s.metadata.emplace_back("levels_exceeding_ionization", std::to_string(ionizing));
        for (const auto& p : points)
            s.rows.push_back({Cell{(long long)p.n0}, Cell{p.p_n0}, Cell{p.p_n0_minus_1}, Cell{p.r_d_over_a0},
                              Cell{std::string(to_string(p.validity))}});
        t.series.push_back(std::move(s));
    }
    return t;
}

Series time_series_rows(const EvolutionSeries& es) {
    Series s;
    for (std::size_t i = 0; i < es.size(); ++i)
        s.rows.push_back({Cell{es.t[i]}, Cell{es.c_n0[i]}, Cell{es.c_n0_minus_1[i]}, Cell{es.deficit[i]}});
    return s;
}

Table cmd_evolve(const CLI::App* sub, const CommonOptions& c, const EventOptions& ev, int l_max,
                 double sigma_barn, double flux, double t_max, int t_points) {
    const auto sources = event_sources(ev);
    if (sources.size() != 1) throw InputError("evolve: give exactly one --rd, --x0, --delta-e or --velocity");
    const auto atom = AtomSpec::from_nucleus_mass(c.n0, c.nucleus_mass);
    const auto res = sources.front().resolve(atom);
    const auto d = res.displacement(atom);
    Table t = base_table(sub);
    t.metadata.emplace_back("x0", format_real(d.x0()));
    t.metadata.emplace_back("r_d_over_a0", format_real(res.r_d_over_a0));
    t.metadata.emplace_back("validity", std::string(to_string(res.validity)));

    if (sigma_barn > 0.0 || flux > 0.0) {
        if (!(sigma_barn > 0.0) || !(flux > 0.0)) throw InputError("evolve: --sigma and --flux go together");
        const auto grid = linear_time_grid(t_max, t_points);
        const auto es = survival_vs_time(atom, d, to_si(sigma_barn, "barn"), flux, grid);
        t.metadata.emplace_back("rate_per_s", format_real(es.rate));
        t.columns = {"t", "c_n0", "c_n0_minus_1", "deficit"};
        t.series.push_back(time_series_rows(es));
        return t;
    }

    if (l_max < 0) throw InputError("evolve: --l-max must be >= 0");
    t.columns = {"l", "c_n0", "c_n0_minus_1", "c_n0_closed_form", "c_n0_minus_1_closed_form"};
    Series s;
    const auto tm = transfer_matrix(atom, d);
    std::vector<double> state(std::size_t(atom.n0()), 0.0);
    state.back() = 1.0;
    for (int l = 0; l <= l_max; ++l) {
        if (l > 0) state = tm.apply(state);
        const double c1 = atom.n0() >= 2 ? state[state.size() - 2] : 0.0;
        const double c1_closed = atom.n0() >= 2 ? closed_form_cn1(atom, d, l) + 0.0 : 0.0;
        s.rows.push_back({Cell{(long long)l}, Cell{state.back()}, Cell{c1}, Cell{closed_form_cn0(atom, d, l)},
                          Cell{c1_closed}});
    }
    t.series.push_back(std::move(s));
    return t;
}

ScenarioPreset read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scenario config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

void describe_channel(Table& t, const Channel& ch) {
    if (const auto* p = std::get_if<PhotonChannel>(&ch)) {
        t.metadata.emplace_back("channel", "photon");
        t.metadata.emplace_back("energy_density_J_per_m3", format_real(p->energy_density));
        t.metadata.emplace_back("frequency_hz", format_real(p->frequency));
    } else {
        const auto& m = std::get<MassiveChannel>(ch);
        t.metadata.emplace_back("channel", "massive");
        t.metadata.emplace_back("particle_mass_kg", format_real(m.particle_mass));
        t.metadata.emplace_back("velocity_m_per_s", format_real(m.velocity));
        t.metadata.emplace_back("cross_section_m2", format_real(m.cross_section));
        t.metadata.emplace_back("flux_per_m2_s", format_real(m.flux));
    }
}

Table cmd_scenario(const CLI::App* sub, const CommonOptions& c, const std::string& preset_name,
                   const std::string& config, double t_max, int t_points) {
    if (preset_name.empty() == config.empty()) throw InputError("scenario: give exactly one of --preset or --config");
    const auto p = config.empty() ? preset(preset_name) : read_config(config);
    const auto atom = AtomSpec::from_nucleus_mass(c.n0, c.nucleus_mass);
    const auto grid = linear_time_grid(t_max, t_points);
    const auto run = channel_survival(atom, p.channel, grid);
    const auto& r = run.rates;

    Table t = base_table(sub);
    t.metadata.emplace_back("scenario", p.name);
    t.metadata.emplace_back("provenance", p.provenance);
    if (!p.notes.empty()) t.metadata.emplace_back("notes", p.notes);
    describe_channel(t, p.channel);
    t.metadata.emplace_back("cross_section_used_m2", format_real(r.cross_section));
    t.metadata.emplace_back("collision_rate_per_s", format_real(r.collision_rate));
    t.metadata.emplace_back("delta_e_per_event_J", format_real(r.energy.delta_E));
    t.metadata.emplace_back("x0_per_event", format_real(r.x0));
    t.metadata.emplace_back("r_d_over_a0", format_real(r.displacement.r_d_over_a0));
    t.metadata.emplace_back("rate_direct_per_s", format_real(r.direct));
    t.metadata.emplace_back("rate_compositional_per_s", format_real(r.compositional));
    t.metadata.emplace_back("rate_relative_mismatch", format_real(r.relative_mismatch));
    t.metadata.emplace_back("rates_consistent", flag(r.consistent));
    t.metadata.emplace_back("validity", std::string(to_string(r.displacement.validity)));
    t.metadata.emplace_back("exceeds_ionization", flag(r.displacement.exceeds_ionization));
    t.metadata.emplace_back("relativistic_projectile", flag(r.relativistic_projectile));
    t.metadata.emplace_back("relativistic_recoil", flag(r.relativistic_recoil));
    t.columns = {"t", "c_n0", "c_n0_minus_1", "deficit"};
    t.series.push_back(time_series_rows(run.series));
    return t;
}

struct VerifyOutcome {
    std::vector<oracle::VerificationReport> reports;
    bool all_passed = true;
};

VerifyOutcome run_verification(bool inject_fault) {
    VerifyOutcome v;
    auto add = [&](oracle::VerificationReport r) {
        v.all_passed = v.all_passed && r.passed;
        v.reports.push_back(std::move(r));
    };
    const std::vector<double> lag_grid{0.01, 0.1, 0.5, 1.0, 2.5, 5.0, 10.0, 20.0, 35.0, 50.0};
    const std::vector<double> identity_grid{0.01, 0.1, 1.0, 10.0};
    add(oracle::verify_laguerre(20, lag_grid));
    add(oracle::verify_laguerre_identity(60, identity_grid));
    add(oracle::verify_log_factorial(150));
    add(oracle::verify_expansion_identity(30, std::vector<double>{0.01, 0.1, 0.5, 1.0}));
    for (int n0 : {5, 10, 20, 40})
        for (double x0 : {0.1, 0.5, 1.0}) add(oracle::verify_coefficients_vs_quadrature(n0, x0, inject_fault));
    for (int n0 : {2, 6, 10, 20})
        for (double x0 : {0.1, 0.5}) add(oracle::verify_multiscatter(n0, x0, 20));
    add(oracle::verify_two_scatter(10, 0.5));
    add(oracle::verify_two_scatter(20, 0.2));
    return v;
}

void write_verification(std::ostream& os, const CLI::App* sub, const VerifyOutcome& v, OutputFormat f) {
    Table checks = base_table(sub);
    checks.metadata.emplace_back("all_passed", flag(v.all_passed));
    checks.columns = {"check", "grid", "max_relative_error", "tolerance", "passed"};
    Series rows;
    for (const auto& r : v.reports)
        rows.rows.push_back({Cell{r.check_name}, Cell{r.grid_description}, Cell{r.max_relative_error},
                             Cell{r.tolerance}, Cell{flag(r.passed)}});
    checks.series.push_back(std::move(rows));

    // C_(n0-1) residuals for l >= 2: informational, not gating.
    Table residuals;
    residuals.metadata.emplace_back("table", "cn1_residuals (informational)");
    residuals.columns = {"grid", "l", "matrix_value", "closed_form", "relative_error"};
    Series res_rows;
    for (const auto& r : v.reports) {
        // "n0=..; x0=.." prefix of the grid description
        const auto cut = r.grid_description.find(';', r.grid_description.find(';') + 1);
        const std::string grid = r.grid_description.substr(0, cut);
        for (const auto& row : r.table)
            res_rows.rows.push_back({Cell{grid}, Cell{(long long)row.l}, Cell{row.matrix_value},
                                     Cell{row.closed_form}, Cell{row.relative_error}});
    }
    residuals.series.push_back(std::move(res_rows));

    if (f == OutputFormat::csv) {
        write_csv(os, checks);
        os << '\n';
        write_csv(os, residuals);
        return;
    }
    std::ostringstream a, b;
    write_json(a, checks);
    write_json(b, residuals);
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::parse(a.str());
    j["cn1_residuals"] = nlohmann::ordered_json::parse(b.str());
    os << j.dump(2) << '\n';
}

void write_presets(std::ostream& os, const std::string& only, OutputFormat f) {
    std::vector<ScenarioPreset> list;
    if (only.empty())
        list = all_presets();
    else
        list.push_back(preset(only));
    if (f == OutputFormat::csv) {
        for (std::size_t i = 0; i < list.size(); ++i) os << (i ? "\n" : "") << serialize(list[i]);
        return;
    }
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& p : list) {
        nlohmann::ordered_json e;
        e["name"] = p.name;
        e["provenance"] = p.provenance;
        if (const auto* ph = std::get_if<PhotonChannel>(&p.channel)) {
            e["kind"] = "photon";
            e["energy_density"] = ph->energy_density;
            e["frequency"] = ph->frequency;
        } else {
            const auto& m = std::get<MassiveChannel>(p.channel);
            e["kind"] = "massive";
            e["particle_mass"] = m.particle_mass;
            e["velocity"] = m.velocity;
            e["cross_section"] = m.cross_section;
            e["flux"] = m.flux;
        }
        e["notes"] = p.notes;
        j.push_back(std::move(e));
    }
    os << j.dump(2) << '\n';
}

OutputFormat parse_format(const std::string& s) { return s == "json" ? OutputFormat::json : OutputFormat::csv; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Scattering-induced decoherence of hydrogenic s-states"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", kVersion);

    // One set per subcommand so each keeps its own defaults.
    CommonOptions c_coeffs, c_survival, c_evolve, c_scenario, c_verify, c_presets;
    c_scenario.n0 = 60;
    EventOptions events;
    int n0_min = 1, n0_max = 60, l_max = 20, t_points = 101;
    double t_max = to_si(1.0, "yr");
    double sigma_barn = 0.0, flux = 0.0;
    std::string preset_name, config, only_preset;
    bool inject_fault = false;

    auto* coeffs = app.add_subcommand("coefficients", "post-scatter coefficients C_1..C_n0");
    add_common(coeffs, c_coeffs);
    add_events(coeffs, events);

    auto* survival = app.add_subcommand("survival", "|C_n0|^2 and |C_n0-1|^2 across an n0 sweep");
    add_common(survival, c_survival, false);
    survival->add_option("--n0-min", n0_min, "first n0 of the sweep");
    survival->add_option("--n0-max", n0_max, "last n0 of the sweep");
    add_events(survival, events);

    auto* evolve = app.add_subcommand("evolve", "coefficients after repeated scatters, or versus time");
    add_common(evolve, c_evolve);
    add_events(evolve, events);
    evolve->add_option("--l-max", l_max, "largest collision count");
    evolve->add_option("--sigma", sigma_barn, "cross section in barn (time mode)");
    evolve->add_option("--flux", flux, "particle flux in 1/(m^2 s) (time mode)");
    evolve->add_option("--t-max", t_max, "end of the time grid in s");
    evolve->add_option("--t-points", t_points, "number of time samples")->check(CLI::PositiveNumber);

    auto* scenario = app.add_subcommand("scenario", "survival under a preset or configured environment");
    add_common(scenario, c_scenario);
    scenario->add_option("--preset", preset_name, "preset name (see `presets`)");
    scenario->add_option("--config", config, "scenario config file (key = value)");
    scenario->add_option("--t-max", t_max, "end of the time grid in s");
    scenario->add_option("--t-points", t_points, "number of time samples")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "run every oracle check");
    verify->add_option("--format", c_verify.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--output", c_verify.output, "output file (default stdout)");
    verify->add_flag("--inject-fault", inject_fault, "perturb the closed form (negative control)");

    auto* presets = app.add_subcommand("presets", "list the built-in scenario presets");
    presets->add_option("--preset", only_preset, "print a single preset");
    presets->add_option("--format", c_presets.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    presets->add_option("--output", c_presets.output, "output file (default stdout)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        std::ostringstream help_out, error_out;
        app.exit(e, help_out, error_out);
        const auto code = e.get_exit_code();
        if (code == 0) {
            out << help_out.str();
            return kExitSuccess;
        }
        err << error_out.str();
        return kExitUsage;
    }

    try {
        const CommonOptions& common = coeffs->parsed()     ? c_coeffs
                                      : survival->parsed() ? c_survival
                                      : evolve->parsed()   ? c_evolve
                                      : scenario->parsed() ? c_scenario
                                      : verify->parsed()   ? c_verify
                                                           : c_presets;

        std::ofstream file;
        std::ostream* os = &out;
        if (!common.output.empty()) {
            file.open(common.output);
            if (!file) {
                err << "error: cannot open output file '" << common.output << "'\n";
                return kExitUsage;
            }
            os = &file;
        }
        const auto fmt = parse_format(common.format);

        if (verify->parsed()) {
            const auto v = run_verification(inject_fault);
            write_verification(*os, verify, v, fmt);
            return v.all_passed ? kExitSuccess : kExitVerificationFailed;
        }
        if (presets->parsed()) {
            write_presets(*os, only_preset, fmt);
            return kExitSuccess;
        }

        Table t;
        if (coeffs->parsed())
            t = cmd_coefficients(coeffs, common, events);
        else if (survival->parsed())
            t = cmd_survival(survival, common, events, n0_min, n0_max);
        else if (evolve->parsed())
            t = cmd_evolve(evolve, common, events, l_max, sigma_barn, flux, t_max, t_points);
        else
            t = cmd_scenario(scenario, common, preset_name, config, t_max, t_points);
        write_table(*os, t, fmt);
        return kExitSuccess;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return kExitVerificationFailed;
    }
}

} // namespace scatdeco::cli
