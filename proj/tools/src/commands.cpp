#include "commands.hpp"

#include "model_io.hpp"
#include "table.hpp"

#include "cavity/catalog.hpp"
#include "cavity/moore.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "cavity/stability.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cavity::cli {

namespace {

struct RunConfig {
    std::string command;
    // model source
    std::string family;
    std::optional<int> M;
    std::optional<double> theta, theta_deg, v0, v1, length, period;
    std::string model_path;
    // output
    std::string out;
    std::string format = "csv";
    std::size_t samples = 0;
    double rel_tol = 1e-10;
    std::optional<std::uint64_t> seed;
    // per command
    std::optional<double> t0, t1, t, t_max;
    std::vector<std::string> methods;
    double omega_min = 1.0, omega_max = 6.0, amp_min = 0.0, amp_max = 0.99;
    int nx = 101, ny = 100;
    int m_max = 8;
    std::string curve_out, boundary_out;
};

ModelSpec resolve_spec(const RunConfig& c) {
    const bool has_flags = !c.family.empty() || c.M || c.theta || c.theta_deg || c.v0 || c.v1 || c.length;
    if (!c.model_path.empty() && has_flags) {
        throw std::invalid_argument("give either --model or model flags, not both");
    }
    ModelSpec s;
    if (!c.model_path.empty()) {
        s = spec_from_file(c.model_path);
    } else {
        s = default_spec(c.family.empty() ? Family::linear_finite : family_from_string(c.family));
        if (c.theta && c.theta_deg) throw std::invalid_argument("give either --theta or --theta-deg");
        if (c.M) s.M = *c.M;
        if (c.theta) s.theta = *c.theta;
        if (c.theta_deg) s.theta = *c.theta_deg * std::numbers::pi / 180.0;
        if (c.v0) s.v0 = *c.v0;
        if (c.v1) s.v1 = *c.v1;
        if (c.length) s.length = *c.length;
    }
    if (c.period) s.T = *c.period;
    return s;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return x;
}

std::size_t sample_count(const RunConfig& c, std::size_t fallback) {
    const std::size_t n = c.samples ? c.samples : fallback;
    if (n < 2) throw std::invalid_argument("--samples must be at least 2");
    return n;
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
        } else {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot write " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

void emit(const RunConfig& c, std::ostream& out, const std::string& path, nlohmann::ordered_json meta,
          const Table& table) {
    Sink sink(path, out);
    if (c.format == "json") {
        write_json(sink.stream(), std::move(meta), table);
        return;
    }
    std::vector<std::string> header;
    header.push_back("cavity " + c.command);
    for (const auto& [key, value] : meta.items()) header.push_back(key + ": " + value.dump());
    write_csv(sink.stream(), header, table);
}

nlohmann::ordered_json meta_for(const CavityModel& m) {
    nlohmann::ordered_json meta;
    meta["model"] = model_to_json(m);
    return meta;
}

// ---------------------------------------------------------------------------

int cmd_trajectory(const RunConfig& c, std::ostream& out) {
    const CavityModel m = make_model(resolve_spec(c));
    const MooreEvaluator ev(m);
    const double T = m.period();
    const auto ts = linspace(c.t0.value_or(0.0), c.t1.value_or(10.0 * T), sample_count(c, 1000));
    std::vector<double> L, Ldot;
    for (double t : ts) {
        L.push_back(ev.trajectory(t));
        double v;
        try {
            v = ev.wall_velocity(t);
        } catch (const std::domain_error&) {
            v = std::nan("");
        }
        Ldot.push_back(v);
    }
    Table tab{{{"t", "time", ts}, {"L", "length", L}, {"Ldot", "", Ldot}}};
    emit(c, out, c.out, meta_for(m), tab);
    return success;
}

int cmd_moore(const RunConfig& c, std::ostream& out) {
    const CavityModel m = make_model(resolve_spec(c));
    const MooreEvaluator ev(m);
    const double T = m.period();
    const auto taus = linspace(c.t0.value_or(0.0), c.t1.value_or(10.0 * T), sample_count(c, 1000));
    std::vector<double> R, n;
    for (double tau : taus) {
        R.push_back(ev.moore_eval(tau));
        n.push_back(static_cast<double>(ev.map_index(tau)));
    }
    Table tab{{{"tau", "time", taus}, {"R", "time", R}, {"n", "", n}}};
    emit(c, out, c.out, meta_for(m), tab);
    return success;
}

int cmd_density(const RunConfig& c, std::ostream& out) {
    const CavityModel m = make_model(resolve_spec(c));
    const MooreEvaluator ev(m);
    const double t = c.t.value_or(10.0 * m.period());
    const double Lt = ev.trajectory(t);
    const auto xs = linspace(0.0, Lt, sample_count(c, 2001));
    const DensityProfile p = density_snapshot(ev, t, xs);
    std::vector<double> scaled;
    for (double v : p.values) scaled.push_back(v / p.rho0);
    auto meta = meta_for(m);
    meta["t"] = t;
    meta["rho0"] = p.rho0;
    meta["packets"] = find_packets(scaled, 10.0).size();
    Table tab{{{"x", "length", xs}, {"T00_over_rho0", "rho0", scaled}}};
    emit(c, out, c.out, meta, tab);
    return success;
}

int cmd_energy(const RunConfig& c, std::ostream& out) {
    const CavityModel m = make_model(resolve_spec(c));
    const MooreEvaluator ev(m);
    const double T = m.period();
    const auto ts = linspace(c.t0.value_or(0.0), c.t1.value_or(10.0 * T), sample_count(c, 200));
    std::vector<std::string> methods = c.methods.empty() ? std::vector<std::string>{"quadrature"} : c.methods;
    Table tab{{{"t", "time", ts}}};
    for (const auto& name : methods) {
        const EnergyMethod method = energy_method_from_string(name);
        const EnergySeries s = energy_series(ev, ts, method, c.rel_tol);
        tab.columns.push_back({std::string("E_") + to_string(method), "energy", s.energy});
    }
    auto meta = meta_for(m);
    meta["rel_tol"] = c.rel_tol;
    emit(c, out, c.out, meta, tab);
    return success;
}

std::string sibling(const std::string& path, const std::string& tag) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + tag;
    return path.substr(0, dot) + "." + tag + path.substr(dot);
}

int cmd_phase_diagram(const RunConfig& c, std::ostream& out) {
    if (!(c.amp_max < 1.0) || c.amp_min < 0.0) throw std::invalid_argument("amplitude range must lie in [0, 1)");
    if (!(c.omega_min > 0.0) || !(c.omega_max > c.omega_min)) throw std::invalid_argument("bad omega range");
    const auto pts = phase_diagram_scan({c.omega_min, c.omega_max}, {c.amp_min, c.amp_max}, c.nx, c.ny);
    std::vector<double> x, y;
    std::vector<std::string> verdict;
    for (const auto& p : pts) {
        x.push_back(p.omega_ratio);
        y.push_back(p.amplitude_ratio);
        verdict.push_back(to_string(p.verdict));
    }
    nlohmann::ordered_json meta;
    meta["scan"] = {{"omega_min", c.omega_min}, {"omega_max", c.omega_max}, {"amplitude_min", c.amp_min},
                    {"amplitude_max", c.amp_max}, {"nx", c.nx}, {"ny", c.ny}};
    emit(c, out, c.out, meta, Table{{{"omega_ratio", "", x}, {"amplitude_ratio", "", y}, {"verdict", "", verdict}}});

    std::string curve_path = c.curve_out, boundary_path = c.boundary_out;
    if (!c.out.empty()) {
        if (curve_path.empty()) curve_path = sibling(c.out, "curve");
        if (boundary_path.empty()) boundary_path = sibling(c.out, "boundaries");
    }
    const double lo = std::max(c.omega_min, 1.0);
    const auto xs = linspace(lo, c.omega_max, sample_count(c, 1000));
    std::vector<double> curve, thr, top;
    for (double r : xs) {
        const bool inside = r > 1.0;
        curve.push_back(inside ? amplitude_frequency_curve(r) : std::nan(""));
        thr.push_back(inside ? instability_threshold(r) : std::nan(""));
        top.push_back(max_amplitude(r));
    }
    if (!curve_path.empty()) {
        emit(c, out, curve_path, meta, Table{{{"omega_ratio", "", xs}, {"amplitude_ratio", "", curve}}});
    }
    if (!boundary_path.empty()) {
        emit(c, out, boundary_path, meta,
             Table{{{"omega_ratio", "", xs}, {"threshold", "", thr}, {"max_amplitude", "", top}}});
    }
    return success;
}

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const CavityModel m = make_model(resolve_spec(c));
    const double t_max = c.t_max.value_or(50.0 * m.period());
    if (!(t_max > 0.0)) throw std::invalid_argument("--t-max must be positive");
    const std::size_t n = sample_count(c, 1000);
    std::vector<double> ts(n);
    if (c.seed) {
        // one uniform draw per cell, endpoints kept
        std::mt19937_64 rng(*c.seed);
        for (std::size_t i = 0; i < n; ++i) ts[i] = t_max * (static_cast<double>(i) + unit_draw(rng)) / static_cast<double>(n);
        ts.front() = 0.0;
        ts.back() = t_max;
    } else {
        for (std::size_t i = 0; i < n; ++i) ts[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    const VerificationReport r = verify_model(m, ts);

    nlohmann::ordered_json j;
    j["model"] = model_to_json(m);
    j["passed"] = r.passed();
    j["t_max"] = r.t_max;
    j["samples"] = r.samples;
    if (c.seed) j["seed"] = *c.seed;
    j["residuals"] = {{"moore", r.moore_residual},
                      {"f_equation", r.f_residual},
                      {"oracle", r.oracle_deviation},
                      {"reconstruction", r.reconstruction_error},
                      {"energy", r.energy_deviation}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& ch : r.checks) {
        j["checks"].push_back({{"name", ch.name},
                               {"value", ch.value},
                               {"threshold", ch.threshold},
                               {"samples", ch.samples},
                               {"passed", ch.passed},
                               {"detail", ch.detail}});
    }
    Sink sink(c.out, out);
    if (c.format == "csv") {
        std::vector<std::string> names, passed, details;
        std::vector<double> values, thresholds;
        for (const auto& ch : r.checks) {
            names.push_back(ch.name);
            values.push_back(ch.value);
            thresholds.push_back(ch.threshold);
            passed.push_back(ch.passed ? "pass" : "fail");
        }
        std::vector<std::string> header{"cavity verify", "model: " + model_to_json(m).dump(),
                                        "passed: " + std::string(r.passed() ? "true" : "false")};
        write_csv(sink.stream(), header,
                  Table{{{"check", "", names}, {"value", "", values}, {"threshold", "", thresholds}, {"status", "", passed}}});
    } else {
        sink.stream() << j.dump(2) << '\n';
    }
    return r.passed() ? success : verification_failed;
}

int cmd_coefficients(const RunConfig& c, std::ostream& out) {
    if (c.m_max < 1) throw std::invalid_argument("--M-max must be at least 1");
    std::vector<double> M, q, cl, sum;
    for (const auto& row : coefficient_table(c.m_max)) {
        M.push_back(row.M);
        q.push_back(row.quantum);
        cl.push_back(row.classical);
        sum.push_back(row.sum);
    }
    nlohmann::ordered_json meta;
    meta["units"] = "pi tan^2(theta) / (12 L)";
    emit(c, out, c.out, meta, Table{{{"M", "", M}, {"quantum", "", q}, {"classical", "", cl}, {"sum", "", sum}}});
    return success;
}

void add_model_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--family", c.family, "static | linear-finite | linear-odd | inversion | homographic");
    sub->add_option("--M", c.M, "Resonance order");
    sub->add_option("--theta", c.theta, "Angle parameter in radians");
    sub->add_option("--theta-deg", c.theta_deg, "Angle parameter in degrees");
    sub->add_option("--v0", c.v0, "Homographic v0");
    sub->add_option("--v1", c.v1, "Homographic v1");
    sub->add_option("--length", c.length, "Length of a static cavity");
    sub->add_option("--model", c.model_path, "Model JSON file");
}

void add_output_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--period", c.period, "Period T of the wall motion (default pi)");
    sub->add_option("--out", c.out, "Output file (default standard output)");
    sub->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--samples", c.samples, "Number of sample points");
    sub->add_option("--rel-tol", c.rel_tol, "Relative tolerance of the energy quadrature");
    sub->add_option("--seed", c.seed, "Seed for randomized draws");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Exact solutions for one-dimensional cavities with a vibrating wall", "cavity"};
    app.require_subcommand(1);

    std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> handlers;
    auto add = [&](const std::string& name, const std::string& help, auto handler) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_output_options(sub, c);
        handlers[name] = handler;
        return sub;
    };

    auto* traj = add("trajectory", "Wall trajectory t, L(t), dL/dt", cmd_trajectory);
    add_model_options(traj, c);
    traj->add_option("--t0", c.t0, "First time (default 0)");
    traj->add_option("--t1", c.t1, "Last time (default 10 T)");

    auto* moore = add("moore", "Moore's function tau, R(tau), n(tau)", cmd_moore);
    add_model_options(moore, c);
    moore->add_option("--tau0", c.t0, "First tau (default 0)");
    moore->add_option("--tau1", c.t1, "Last tau (default 10 T)");

    auto* density = add("density", "Energy density snapshot in units of rho0", cmd_density);
    add_model_options(density, c);
    density->add_option("--t", c.t, "Time of the snapshot (default 10 T)");

    auto* energy = add("energy", "Total energy E(t)", cmd_energy);
    add_model_options(energy, c);
    energy->add_option("--t0", c.t0, "First time (default 0)");
    energy->add_option("--t1", c.t1, "Last time (default 10 T)");
    energy->add_option("--method", c.methods, "quadrature | closed | asymptotic | classical (repeatable)")
        ->delimiter(',');

    auto* phase = add("phase-diagram", "Stability verdicts on a (omega/omega1, dL/L) grid", cmd_phase_diagram);
    phase->add_option("--omega-min", c.omega_min, "Smallest omega / omega1");
    phase->add_option("--omega-max", c.omega_max, "Largest omega / omega1");
    phase->add_option("--amp-min", c.amp_min, "Smallest dL / L");
    phase->add_option("--amp-max", c.amp_max, "Largest dL / L (below 1)");
    phase->add_option("--nx", c.nx, "Grid points along omega / omega1");
    phase->add_option("--ny", c.ny, "Grid points along dL / L");
    phase->add_option("--curve-out", c.curve_out, "File for the amplitude-frequency curve");
    phase->add_option("--boundary-out", c.boundary_out, "File for the threshold and luminal curves");

    auto* verify = add("verify", "Cross-check a model against the trajectory-only solver", cmd_verify);
    add_model_options(verify, c);
    verify->add_option("--t-max", c.t_max, "End of the time window (default 50 T)");

    auto* coeff = add("coefficients", "Quantum and classical growth coefficients", cmd_coefficients);
    coeff->add_option("--M-max", c.m_max, "Largest order");

    std::vector<std::string> rest(args.rbegin(), args.rend());
    if (!rest.empty()) rest.pop_back();
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return success;
        }
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }

    CLI::App* chosen = app.get_subcommands().front();
    c.command = chosen->get_name();
    if (c.command == "verify" && chosen->count("--format") == 0) c.format = "json";
    try {
        return handlers.at(c.command)(c, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return verification_failed;
    }
    return invalid_input;
}

}  // namespace cavity::cli
