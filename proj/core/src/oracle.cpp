#include "cavity/oracle.hpp"

#include "cavity/moore.hpp"
#include "cavity/observables.hpp"
#include "cavity/stability.hpp"
#include "parallel.hpp"
#include "trajectory_source.hpp"

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cavity {

namespace {

constexpr long kIterationCap = 1'000'000;

class ModelSource final : public TrajectorySource {
public:
    explicit ModelSource(const CavityModel& model) : k_(precise_constants(model)) {
        length = model.length();
        period = model.period();
        vmax = std::abs(model.swing());
        const double w = model.omega();
        const double s = model.swing();
        const double peak = std::asin(std::abs(s));
        min_length = length + (-peak - std::asin(s)) / w;
        max_length = length + (peak - std::asin(s)) / w;
    }

    double at(double t) const override { return static_cast<double>(precise_trajectory(k_, quad(t))); }
    quad at_quad(quad t) const override { return precise_trajectory(k_, t); }

private:
    PreciseConstants k_;
};

class SampledSource final : public TrajectorySource {
public:
    SampledSource(std::vector<double> t, std::vector<double> L, double T) {
        if (t.size() != L.size() || t.size() < 4) throw std::invalid_argument("trajectory needs at least 4 samples");
        if (!(T > 0.0)) throw std::invalid_argument("trajectory period must be positive");
        if (std::abs(t.front()) > 1e-12 * T) throw std::invalid_argument("trajectory samples must start at t = 0");
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (!(t[i] > t[i - 1])) throw std::invalid_argument("trajectory times must increase strictly");
        }
        for (double x : L) {
            if (!(x > 0.0)) throw std::invalid_argument("trajectory length must stay positive");
        }
        if (t.back() < T * (1.0 - 1e-12)) throw std::invalid_argument("trajectory samples must cover one period");
        period = T;
        length = L.front();
        last_ = t.back();
        min_length = *std::min_element(L.begin(), L.end());
        max_length = *std::max_element(L.begin(), L.end());
        spline_ = std::make_shared<Spline>(std::move(t), std::move(L));

        const double h = T / 1e4;
        vmax = 0.0;
        for (int i = 0; i <= 10000; ++i) {
            const double x = h * i;
            vmax = std::max(vmax, std::abs(at(x + h) - at(x - h)) / (2.0 * h));
            min_length = std::min(min_length, at(x));
            max_length = std::max(max_length, at(x));
        }
        if (!(vmax < 1.0)) throw std::invalid_argument("trajectory moves at or above the speed of light");
    }

    double at(double t) const override {
        if (t < 0.0) return length;
        if (t > last_) t -= period * std::ceil((t - last_) / period);
        return (*spline_)(t);
    }

private:
    using Spline = boost::math::interpolators::pchip<std::vector<double>>;
    std::shared_ptr<Spline> spline_;
    double last_ = 0.0;
};

quad f_quad(const TrajectorySource& s, quad tau, quad tol) {
    const quad L = s.length;
    if (tau < L) return tau - 2 * L;
    auto g = [&](quad t) { return t + s.at_quad(t) - tau; };
    const quad pad = quad(1e-9) * L;
    const quad lo = tau - quad(s.max_length) - pad;
    const quad hi = tau - quad(s.min_length) + pad;
    const quad glo = g(lo), ghi = g(hi);
    if (glo > 0 || ghi < 0) throw std::runtime_error("root bracket does not enclose t + L(t) = tau (inadmissible trajectory)");
    const quad eps = ldexp(quad(1), -112);
    auto done = [&](quad a, quad b) {
        using boost::multiprecision::abs;
        return abs(b - a) <= std::max(tol, 4 * eps * std::max(abs(a), abs(b)));
    };
    std::uintmax_t iterations = 400;
    quad t;
    if (glo == 0) {
        t = lo;
    } else if (ghi == 0) {
        t = hi;
    } else {
        const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, done, iterations);
        t = (r.first + r.second) / 2;
    }
    return t - s.at_quad(t);
}

quad moore_quad(const TrajectorySource& s, quad tau, quad tol) {
    const quad L = s.length;
    quad x = tau;
    long k = 0;
    while (x >= L) {
        x = f_quad(s, x, tol);
        if (++k > kIterationCap) throw std::runtime_error("oracle iteration cap exceeded");
    }
    return x - 2 * L + 2 * L * k;
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

VerificationCheck make_check(std::string name, double value, double threshold, std::size_t samples,
                             std::string detail = {}) {
    VerificationCheck c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.samples = samples;
    c.passed = value <= threshold;  // NaN fails
    c.detail = std::move(detail);
    return c;
}

double max_speed(const MooreEvaluator& ev, std::size_t samples) {
    const double T = ev.model().period();
    auto speed = [&](double t) { return std::abs(ev.wall_velocity(t)); };
    const std::size_t n = std::max<std::size_t>(samples, 64);
    double best = 0.0, at = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = T * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double v = speed(t);
        if (v > best) best = v, at = t;
    }
    const double h = T / static_cast<double>(n);
    const auto r = boost::math::tools::brent_find_minima([&](double t) { return -speed(t); }, at - h, at + h, 52);
    return std::max(best, -r.second);
}

// Density check away from packets at one time slice, as a fraction of the
// expected plateau.
double plateau_deviation(const MooreEvaluator& ev, double t, std::size_t& used) {
    const CavityModel& m = ev.model();
    const double rho0 = casimir_density(m);
    const double expected = -m.omega() * m.omega() / (24.0 * std::numbers::pi);
    const double Lt = ev.trajectory(t);
    const std::size_t n = 20001;
    std::vector<double> xs(n), vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = Lt * static_cast<double>(i) / static_cast<double>(n - 1);
        vals[i] = energy_density_2d(ev, t, xs[i]);
    }
    // a packet is the connected run above zero around each peak
    std::vector<bool> excluded(n, false);
    for (std::size_t p : find_packets(vals, 10.0 * rho0)) {
        std::size_t a = p, b = p;
        while (a > 0 && vals[a - 1] > 0.0) --a;
        while (b + 1 < n && vals[b + 1] > 0.0) ++b;
        const std::size_t width = b - a + 1;
        const std::size_t lo = a > 3 * width ? a - 3 * width : 0;
        const std::size_t hi = std::min(n - 1, b + 3 * width);
        for (std::size_t i = lo; i <= hi; ++i) excluded[i] = true;
    }
    double worst = 0.0;
    used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (excluded[i]) continue;
        worst = std::max(worst, std::abs(vals[i] / expected - 1.0));
        ++used;
    }
    return worst;
}

double fitted_log_slope(const MooreEvaluator& ev, double t0, double t1, std::size_t n) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double t : grid(t0, t1, n)) {
        const double y = std::log(total_energy_quadrature(ev, t, 1e-9));
        sx += t, sy += y, sxx += t * t, sxy += t * y;
    }
    const double k = static_cast<double>(n);
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

// ---------------------------------------------------------------------------

TrajectoryHandle::TrajectoryHandle(std::shared_ptr<const TrajectorySource> source) : source_(std::move(source)) {}

TrajectoryHandle TrajectoryHandle::from_model(const CavityModel& model) {
    return TrajectoryHandle(std::make_shared<const ModelSource>(model));
}

TrajectoryHandle TrajectoryHandle::from_samples(std::vector<double> t, std::vector<double> L, double period) {
    return TrajectoryHandle(std::make_shared<const SampledSource>(std::move(t), std::move(L), period));
}

TrajectoryHandle TrajectoryHandle::from_csv(const std::string& path, double period) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open trajectory file: " + path);
    std::vector<double> t, L;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a, b;
        if (!(row >> a >> b)) {
            if (t.empty()) continue;  // header row
            throw std::invalid_argument("malformed trajectory row: " + line);
        }
        t.push_back(a);
        L.push_back(b);
    }
    return from_samples(std::move(t), std::move(L), period);
}

double TrajectoryHandle::operator()(double t) const { return source_->at(t); }
double TrajectoryHandle::length() const { return source_->length; }
double TrajectoryHandle::period() const { return source_->period; }
double TrajectoryHandle::vmax() const { return source_->vmax; }
double TrajectoryHandle::min_length() const { return source_->min_length; }
double TrajectoryHandle::max_length() const { return source_->max_length; }

double f_from_trajectory(const TrajectoryHandle& traj, double tau, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
    return static_cast<double>(f_quad(traj.source(), quad(tau), quad(tol)));
}

double moore_from_trajectory(const TrajectoryHandle& traj, double tau, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
    return static_cast<double>(moore_quad(traj.source(), quad(tau), quad(tol)));
}

// ---------------------------------------------------------------------------

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerificationCheck& c) { return c.passed; });
}

const VerificationCheck* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

VerificationReport verify_model(const CavityModel& model, double t_max, std::size_t samples, VerifyOptions options) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (samples < 2) throw std::invalid_argument("verification needs at least 2 samples");
    return verify_model(model, grid(0.0, t_max, samples), options);
}

VerificationReport verify_model(const CavityModel& model, const std::vector<double>& ts, VerifyOptions options) {
    if (ts.size() < 2) throw std::invalid_argument("verification needs at least 2 samples");
    for (double t : ts) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("sample times must be finite and nonnegative");
    }
    const double t_max = *std::max_element(ts.begin(), ts.end());
    const std::size_t samples = ts.size();
    VerificationReport rep;
    rep.t_max = t_max;
    rep.samples = samples;

    const MooreEvaluator ev(model);
    const TrajectoryHandle traj = TrajectoryHandle::from_model(model);
    const double L = model.length();
    const double T = model.period();

    auto worst = [](const std::vector<double>& v) {
        double w = 0.0;
        for (double x : v) w = std::isnan(x) || std::isnan(w) ? std::numeric_limits<double>::quiet_NaN() : std::max(w, x);
        return w;
    };

    // any exception inside a group of checks becomes a failed entry
    auto guarded = [&](const char* name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            rep.checks.push_back(make_check(name, std::numeric_limits<double>::infinity(), 0.0, 0, e.what()));
        }
    };

    guarded("residuals", [&] {
        std::vector<double> moore(samples), fres(samples), oracle(samples), recon(samples);
        parallel_for(samples, [&](std::size_t i) {
            const double t = ts[i];
            const double Lt = ev.trajectory(t);
            moore[i] = std::abs(ev.moore_residual(t));
            fres[i] = std::abs(ev.f_eval(t + Lt) - (t - Lt));
            const double tau = t + Lt;
            oracle[i] = std::abs(moore_from_trajectory(traj, tau) - ev.moore_eval(tau));
            const auto [t2, L2] = ev.trajectory_from_characteristic(tau);
            recon[i] = std::max(std::abs(t2 - t), std::abs(L2 - Lt));
        });
        rep.moore_residual = worst(moore);
        rep.f_residual = worst(fres);
        rep.oracle_deviation = worst(oracle);
        rep.reconstruction_error = worst(recon);
        rep.checks.push_back(make_check("moore_residual", rep.moore_residual, 1e-9 * L, samples));
        rep.checks.push_back(make_check("f_equation", rep.f_residual, 1e-9 * L, samples));
        rep.checks.push_back(make_check("oracle_equivalence", rep.oracle_deviation, 1e-7 * L, samples));
        rep.checks.push_back(make_check("trajectory_roundtrip", rep.reconstruction_error, 1e-9 * L, samples));
    });

    // sewing onto the static past, in phase form so that v0 = inf is covered
    guarded("sewing", [&] {
        const CircleLift lift(model.delta1());
        const double phi0 = model.sewing_phase();
        const double image = std::abs(std::remainder(lift(phi0) + phi0, std::numbers::pi));
        const double slope = std::abs(lift.slope(phi0) - 1.0);
        rep.checks.push_back(make_check("sewing_map", std::max(image, slope), 1e-12, 1));
        const double v = model.v0().value_or(1.0);
        double s = 0.0;
        try {
            s = std::abs(schwarzian_at(model.delta1(), v));
        } catch (const std::domain_error&) {
            s = std::numeric_limits<double>::infinity();
        }
        rep.checks.push_back(make_check("sewing_schwarzian", s, 1e-6, 1));
        const double start = std::max(std::abs(ev.trajectory(0.0) - L), std::abs(ev.wall_velocity(0.0)));
        rep.checks.push_back(make_check("sewing_trajectory", start, 1e-9, 1));
    });

    guarded("velocity_bound", [&] {
        const double speed = model.degenerate_static() ? 0.0 : max_speed(ev, samples);
        rep.checks.push_back(make_check("velocity_bound", std::abs(speed - model.vmax()), 1e-6, samples));
    });

    if (options.energy && model.family() == Family::linear_odd) guarded("energy_closed_vs_quadrature", [&] {
        const std::vector<double> te = grid(0.0, t_max, std::min<std::size_t>(samples, 500));
        std::vector<double> dev(te.size());
        parallel_for(te.size(), [&](std::size_t i) {
            const double q = total_energy_quadrature(ev, te[i]);
            dev[i] = std::abs(total_energy_closed(ev, te[i]) - q) / std::abs(q);
        });
        rep.energy_deviation = worst(dev);
        rep.checks.push_back(make_check("energy_closed_vs_quadrature", rep.energy_deviation, 1e-6, te.size()));
    });

    if (options.plateau && model.family() == Family::linear_finite && t_max >= 20.0 * T) guarded("density_plateau", [&] {
        const double t = std::min(t_max, 40.0 * T);
        std::size_t used = 0;
        const double dev = plateau_deviation(ev, t, used);
        rep.checks.push_back(make_check("density_plateau", dev, 1e-2, used, "t = " + std::to_string(t / T) + " T"));
    });

    if (options.growth) guarded("growth_rate", [&] {
        const StabilityReport stab = classify_model(model);
        if (stab.verdict != Verdict::exponential || !stab.growth_rate) return;
        const double fit = fitted_log_slope(ev, 30.0 * T, 80.0 * T, 26);
        rep.checks.push_back(make_check("growth_rate", std::abs(fit / *stab.growth_rate - 1.0), 5e-2, 26,
                                        "fitted " + std::to_string(fit) + ", predicted " +
                                            std::to_string(*stab.growth_rate)));
    });
    return rep;
}

}  // namespace cavity
