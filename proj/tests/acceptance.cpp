// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
// Reference values are computed here from elementary formulas, dense
// sampling and least-squares fits, never from the quantity under test.

#include "properties.hpp"

#include "cavity/catalog.hpp"
#include "cavity/moore.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "cavity/stability.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace cavity;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

struct Named {
    const char* name;
    CavityModel model;
};

std::vector<Named> four_families() {
    return {{"linear-finite", make_linear_finite(2, kPi / 4)},
            {"linear-odd", make_linear_odd(2, 0.3)},
            {"inversion", make_inversion(1, kPi / 6)},
            {"homographic", make_homographic(1, 1.0, 2.0)}};
}

// extremum of g near the best of a dense sample, refined with Brent
double sampled_max(const std::function<double(double)>& g, double a, double b, std::size_t n) {
    double best = -INFINITY, at = a;
    for (double t : linspace(a, b, n)) {
        const double v = g(t);
        if (v > best) best = v, at = t;
    }
    const double h = (b - a) / static_cast<double>(n - 1);
    const auto r = boost::math::tools::brent_find_minima([&](double t) { return -g(t); }, at - h, at + h, 60);
    return std::max(best, -r.second);
}

// least-squares polynomial coefficients (lowest order first) in t / scale
Eigen::VectorXd polyfit(const std::vector<double>& t, const std::vector<double>& y, int degree, double scale) {
    Eigen::MatrixXd A(t.size(), degree + 1);
    Eigen::VectorXd b(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        double p = 1.0;
        for (int k = 0; k <= degree; ++k, p *= t[i] / scale) A(i, k) = p;
        b(i) = y[i];
    }
    return A.colPivHouseholderQr().solve(b);
}

Outcome moore_residual() {
    double worst = 0.0;
    std::string where;
    for (const auto& [name, m] : four_families()) {
        const MooreEvaluator ev(m);
        double w = 0.0;
        for (double t : linspace(0.0, 50.0 * m.period(), 10000)) w = std::max(w, std::abs(ev.moore_residual(t)) / m.length());
        if (!(w <= worst)) worst = w, where = name;
    }
    return {worst <= 1e-9, fmt("max |R(t+L)-R(t-L)-2L| / L = %.3g (%s)", worst, where.c_str())};
}

Outcome oracle_equivalence() {
    double worst = 0.0;
    std::string where;
    for (const auto& [name, m] : four_families()) {
        const MooreEvaluator ev(m);
        const TrajectoryHandle traj = TrajectoryHandle::from_model(m);
        double w = 0.0;
        for (double t : linspace(0.0, 50.0 * m.period(), 10000)) {
            const double tau = t + ev.trajectory(t);
            w = std::max(w, std::abs(moore_from_trajectory(traj, tau) - ev.moore_eval(tau)) / m.length());
        }
        if (!(w <= worst)) worst = w, where = name;
    }
    return {worst <= 1e-7, fmt("max |R_oracle - R| / L = %.3g (%s)", worst, where.c_str())};
}

Outcome sewing() {
    double map = 0.0, schw = 0.0, traj = 0.0, diff = 0.0;
    for (const auto& [name, m] : four_families()) {
        Homography h = m.delta1();
        double v = 0.0;
        if (m.v0()) {
            v = *m.v0();
        } else {
            // v0 = infinity: conjugate by u = -1/v, the sewing point becomes u = 0
            const Homography flip(0.0, -1.0, 1.0, 0.0);
            h = compose(flip, compose(h, flip.inverse()));
        }
        map = std::max({map, std::abs(h(v) + v), std::abs(h.derivative_at(v) - 1.0)});
        schw = std::max(schw, std::abs(schwarzian_at(h, v)));
        const MooreEvaluator ev(m);
        // second-order one-sided difference, independent of wall_velocity
        const double dt = 1e-4 * m.period();
        const double slope = (-3.0 * ev.trajectory(0.0) + 4.0 * ev.trajectory(dt) - ev.trajectory(2.0 * dt)) / (2.0 * dt);
        traj = std::max({traj, std::abs(ev.trajectory(0.0) - m.length()), std::abs(ev.wall_velocity(0.0))});
        diff = std::max(diff, std::abs(slope));
    }
    return {map <= 1e-12 && schw <= 1e-6 && traj <= 1e-9 && diff <= 1e-6,
            fmt("map %.3g, Schwarzian %.3g, L(0) and L'(0) %.3g, difference slope %.3g", map, schw, traj, diff)};
}

Outcome velocity_bounds() {
    double worst = 0.0;
    std::string detail;
    for (const auto& [name, m] : four_families()) {
        const MooreEvaluator ev(m);
        double expected = 0.0;
        switch (m.family()) {
            case Family::linear_finite:
            case Family::linear_odd: expected = std::abs(std::sin(m.theta())); break;
            case Family::inversion: expected = std::abs(std::cos(2.0 * m.theta())); break;
            default: {
                const double v0 = *m.v0(), v1 = m.v1();
                const double th = std::atan((1.0 + v0 * v0) / (2.0 * v1) - v0);
                expected = std::abs(std::sin(m.omega() * m.length() + th));
            }
        }
        const double T = m.period();
        const double got = sampled_max([&](double t) { return std::abs(ev.wall_velocity(t)); }, 0.0, T, 20001);
        worst = std::max(worst, std::abs(got - expected));
        detail += fmt("%s %.9f/%.9f ", name, got, expected);
    }
    return {worst <= 1e-6, fmt("max deviation %.3g; ", worst) + detail};
}

Outcome casimir_baseline() {
    double worst = 0.0;
    for (double L : {1.0, kPi, 7.5}) {
        const MooreEvaluator ev(make_static(L));
        const double rho = -kPi / (24.0 * L * L);
        for (double t : {0.0, 3.0, 40.0}) {
            for (double x : linspace(0.0, L, 11)) worst = std::max(worst, std::abs(energy_density_2d(ev, t, x) / rho - 1.0));
            worst = std::max(worst, std::abs(total_energy_quadrature(ev, t) / (-kPi / (24.0 * L)) - 1.0));
        }
    }
    // static past of a moving cavity
    for (const auto& [name, m] : four_families()) {
        const MooreEvaluator ev(m);
        const double L = m.length();
        for (double x : linspace(0.0, 0.9 * L, 10))
            worst = std::max(worst, std::abs(energy_density_2d(ev, 0.0, x) / (-kPi / (24.0 * L * L)) - 1.0));
    }
    return {worst <= 1e-12, fmt("max relative deviation %.3g", worst)};
}

Outcome plateau() {
    const CavityModel m = make_linear_finite(2, kPi / 4);
    const MooreEvaluator ev(m);
    const double T = m.period(), L = m.length();
    const double t = 40.0 * T;
    const double rho0 = kPi / (24.0 * L * L);
    const double Lt = ev.trajectory(t);
    const std::size_t n = 40001;
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = energy_density_2d(ev, t, Lt * static_cast<double>(i) / (n - 1)) / rho0;
    // drop every sample within three packet widths of a positive excursion
    std::vector<bool> skip(n, false);
    for (std::size_t i = 0; i < n;) {
        if (r[i] <= 0.0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && r[j + 1] > 0.0) ++j;
        const std::size_t w = j - i + 1;
        for (std::size_t k = i >= 3 * w ? i - 3 * w : 0; k <= std::min(n - 1, j + 3 * w); ++k) skip[k] = true;
        i = j + 1;
    }
    double worst = 0.0, mean = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (skip[i]) continue;
        worst = std::max(worst, std::abs(r[i] / -20.25 - 1.0));
        mean += r[i];
        ++used;
    }
    mean /= static_cast<double>(used);
    return {used > n / 2 && worst <= 1e-2,
            fmt("mean rho/rho0 = %.6f over %zu points, max deviation %.3g", mean, used, worst)};
}

Outcome quadratic_growth() {
    // finite-v0 family against the printed coefficient
    const CavityModel lf = make_linear_finite(2, kPi / 4);
    const MooreEvaluator evf(lf);
    const double T = lf.period();
    std::vector<double> ts = linspace(100.0 * T, 200.0 * T, 101), es;
    for (double t : ts) es.push_back(total_energy_quadrature(evf, t, 1e-9));
    const double a_lf = polyfit(ts, es, 2, T)(2) / (T * T);
    const double w = lf.omega(), w1 = lf.omega1(), tn = std::tan(lf.theta());
    const double printed = w * (w * w - w1 * w1) * tn * tn / (24.0 * lf.order() * kPi);
    const double r_lf = a_lf / printed;

    // odd resonance against M(M-1) pi tan^2 / (3 (2M-1)^2 L) per period squared
    const CavityModel lo = make_linear_odd(2, 0.3);
    const MooreEvaluator evo(lo);
    std::vector<double> es2;
    for (double t : ts) es2.push_back(total_energy_quadrature(evo, t, 1e-9));
    const double a_lo = polyfit(ts, es2, 2, T)(2) / (T * T);
    const double M = lo.order(), t2 = std::tan(lo.theta()) * std::tan(lo.theta());
    const double expected_lo = M * (M - 1.0) * kPi * t2 / (3.0 * (2 * M - 1) * (2 * M - 1) * lo.length()) / (T * T);
    const double r_lo = a_lo / expected_lo;

    // jumps: runs of large increments, one per period, near the period marks
    std::vector<double> grid = linspace(20.0 * T, 30.0 * T, 2001), inc;
    double prev = total_energy_quadrature(evo, grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double e = total_energy_quadrature(evo, grid[i]);
        inc.push_back(e - prev);
        prev = e;
    }
    std::vector<double> mag(inc.size());
    std::transform(inc.begin(), inc.end(), mag.begin(), [](double x) { return std::abs(x); });
    std::nth_element(mag.begin(), mag.begin() + mag.size() / 2, mag.end());
    const double threshold = 20.0 * mag[mag.size() / 2];
    int jumps = 0;
    bool near_marks = true;
    for (std::size_t i = 0; i < inc.size();) {
        if (inc[i] <= threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < inc.size() && inc[j + 1] > threshold) ++j;
        const double at = grid[(i + j) / 2 + 1] / T;
        near_marks = near_marks && std::abs(at - std::round(at)) < 0.1;
        ++jumps;
        i = j + 1;
    }
    const bool ok_lf = std::abs(r_lf - 1.0) <= 0.02;
    const bool ok_lo = std::abs(r_lo - 1.0) <= 0.02 && jumps == 10 && near_marks;
    return {ok_lf && ok_lo,
            fmt("linear-finite fit/printed = %.4f (fit %.6g, printed %.6g, derived %.6g); "
                "linear-odd fit/expected = %.4f, %d jumps in 10 periods%s",
                r_lf, a_lf, printed, quadratic_coefficient(lf), r_lo, jumps, near_marks ? " at the period marks" : "")};
}

Outcome closed_vs_quadrature() {
    const CavityModel m = make_linear_odd(2, 0.3);
    const MooreEvaluator ev(m);
    double worst = 0.0;
    for (double t : linspace(0.0, 50.0 * m.period(), 500)) {
        const double q = total_energy_quadrature(ev, t, 1e-12);
        worst = std::max(worst, std::abs(total_energy_closed(ev, t) - q) / std::abs(q));
    }
    return {worst <= 1e-6, fmt("max relative deviation %.3g", worst)};
}

Outcome coefficient_unity() {
    double worst = 0.0, q1 = 1.0;
    bool shape = true;
    const auto rows = coefficient_table(8);
    for (const auto& r : rows) {
        const double odd = 2.0 * r.M - 1.0;
        shape = shape && std::abs(r.quantum - 4.0 * r.M * (r.M - 1) / (odd * odd)) <= 1e-15 &&
                std::abs(r.classical - 1.0 / (odd * odd)) <= 1e-15;
        worst = std::max(worst, std::abs(r.quantum + r.classical - 1.0));
        if (r.M == 1) q1 = r.quantum;
    }
    return {rows.size() == 8 && shape && worst <= 1e-14 && q1 == 0.0,
            fmt("M = 1..8: max |quantum + classical - 1| = %.3g, M = 1 quantum = %g", worst, q1)};
}

Outcome exponential_instability() {
    const CavityModel m = make_homographic(1, 1.0, 2.0);
    const MooreEvaluator ev(m);
    const double T = m.period();
    std::vector<double> ts = linspace(30.0 * T, 80.0 * T, 51), ys;
    for (double t : ts) ys.push_back(std::log(total_energy_quadrature(ev, t, 1e-9)));
    const double slope = polyfit(ts, ys, 1, 1.0)(1);
    const double s3 = std::sqrt(3.0);
    const double printed = std::log((2.0 + s3) / (2.0 - s3)) / (2.0 * m.length());
    const double per_spacing = std::log((2.0 + s3) / (2.0 - s3)) / (2.0 * kPi);
    return {std::abs(slope / printed - 1.0) <= 0.05,
            fmt("fitted slope %.6f vs %.6f (ratio %.4f); per milestone spacing %.6f (ratio %.4f)", slope, printed,
                slope / printed, per_spacing, slope / per_spacing)};
}

Outcome bounded_elliptic() {
    const CavityModel m = make_inversion(1, kPi / 6);
    const MooreEvaluator ev(m);
    const double T = m.period();
    const double P = (4.0 * m.order() + 1.0) * T;
    double periodic = 0.0, first = 0.0, later = 0.0;
    for (double t : linspace(m.length(), m.length() + P, 400)) first = std::max(first, std::abs(total_energy_quadrature(ev, t)));
    for (double t : linspace(m.length(), 100.0 * T - P, 1000)) {
        const double e = total_energy_quadrature(ev, t, 1e-12);
        periodic = std::max(periodic, std::abs(total_energy_quadrature(ev, t + P, 1e-12) / e - 1.0));
        later = std::max(later, std::abs(e));
    }
    return {periodic <= 1e-6 && later <= first * (1.0 + 1e-6),
            fmt("max |E(t+5T)/E(t) - 1| = %.3g, max |E| over 100T / first period = %.9f", periodic, later / first)};
}

Outcome phase_diagram() {
    const Verdict a = classify_point(2.5, 0.1), b = classify_point(2.5, 0.3), c = classify_point(2.5, 0.5);
    const double thr = instability_threshold(2.5), top = max_amplitude(2.5);
    return {a == Verdict::stable && b == Verdict::exponential && c == Verdict::forbidden && thr == 0.2 && top == 0.4,
            fmt("%s/%s/%s, threshold %.17g, max %.17g", to_string(a), to_string(b), to_string(c), thr, top)};
}

Outcome amplitude_curve() {
    const CavityModel m = make_linear_finite(2, kPi / 4);
    const MooreEvaluator ev(m);
    const double T = m.period();
    auto L = [&](double t) { return ev.trajectory(t); };
    const double hi = sampled_max(L, 0.0, T, 4001);
    const double lo = -sampled_max([&](double t) { return -L(t); }, 0.0, T, 4001);
    const double sampled = (hi - lo) / m.length();
    const double curve = amplitude_frequency_curve(m.omega_ratio());
    const double d = std::max(std::abs(curve - 1.0 / 9.0), std::abs(sampled - curve));
    return {m.omega_ratio() == 4.5 && d <= 1e-12, fmt("curve %.17g, sampled %.17g, 1/9 %.17g", curve, sampled, 1.0 / 9.0)};
}

Outcome property_suite() {
    bool ok = true;
    std::string detail;
    for (const auto& p : testing::run_all_properties(1000, kSeed)) {
        ok = ok && p.passed();
        detail += fmt("%s %d/%d; ", p.name.c_str(), p.trials - p.failures, p.trials);
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
        {"moore residual", moore_residual},
        {"oracle equivalence", oracle_equivalence},
        {"sewing", sewing},
        {"velocity bounds", velocity_bounds},
        {"casimir baseline", casimir_baseline},
        {"sub-casimir plateau", plateau},
        {"quadratic growth", quadratic_growth},
        {"closed form vs quadrature", closed_vs_quadrature},
        {"coefficient unity", coefficient_unity},
        {"exponential instability", exponential_instability},
        {"bounded elliptic case", bounded_elliptic},
        {"phase diagram", phase_diagram},
        {"amplitude-frequency curve", amplitude_curve},
        {"property suite", property_suite},
    };
    int failed = 0;
    int id = 0;
    for (const auto& [name, run] : criteria) {
        ++id;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %-26s %s (%.1fs)\n", o.passed ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", id - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
