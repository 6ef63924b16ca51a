#include "cavity/catalog.hpp"

#include "cavity/moore.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cavity {

namespace {

constexpr double kPi = std::numbers::pi;

void require_period(double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument("parameter out of range: period must be positive");
    }
}

void require_angle(double theta) {
    if (!std::isfinite(theta) || std::abs(theta) >= 0.5 * kPi) {
        throw std::invalid_argument("parameter out of range: |theta| must be below pi/2");
    }
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

const char* to_string(Family family) {
    switch (family) {
        case Family::static_cavity: return "static";
        case Family::linear_finite: return "linear-finite";
        case Family::linear_odd: return "linear-odd";
        case Family::inversion: return "inversion";
        case Family::homographic: return "homographic";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    for (Family f : {Family::static_cavity, Family::linear_finite, Family::linear_odd,
                     Family::inversion, Family::homographic}) {
        if (name == to_string(f)) return f;
    }
    throw std::invalid_argument("unknown family '" + name + "'");
}

double CavityModel::amplitude() const { return 2.0 * std::asin(std::min(vmax_, 1.0)) / omega(); }

void CavityModel::finish() {
    map_class_ = classify(delta1_);
    if (!(vmax_ < 1.0)) throw std::invalid_argument("luminal wall: vmax must stay below 1");
}

CavityModel CavityModel::with_fundamental_map(const Homography& h) const {
    CavityModel copy = *this;
    copy.delta1_ = h;
    copy.map_overridden_ = true;
    copy.map_class_ = classify(h);
    return copy;
}

CavityModel CavityModel::with_vmax(double vmax) const {
    CavityModel copy = *this;
    copy.vmax_ = vmax;
    return copy;
}

CavityModel make_static(double length, double period) {
    require_period(period);
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("parameter out of range: L must be positive");
    }
    CavityModel m;
    m.family_ = Family::static_cavity;
    m.length_ = length;
    m.period_ = period;
    m.v0_ = std::tan(0.5 * m.omega() * length);
    // one period of a resting wall maps phase phi to phi - omega L
    m.delta1_ = Homography::rotation(-m.omega() * length);
    m.spec_ = {Family::static_cavity, 0, std::nullopt, std::nullopt, std::nullopt, length, period};
    m.finish();
    return m;
}

CavityModel make_linear_finite(int M, double theta, double period) {
    require_period(period);
    if (M < 1) throw std::invalid_argument("parameter out of range: M must be >= 1");
    require_angle(theta);
    if (theta == 0.0) throw std::invalid_argument("static cavity: theta = 0 (use make_static)");
    CavityModel m;
    m.family_ = Family::linear_finite;
    m.period_ = period;
    m.order_ = M;
    m.theta_ = theta;
    m.length_ = (M + theta / kPi) * period;
    m.v0_ = std::tan(theta);
    m.delta1_ = Homography::translation(-2.0 * std::tan(theta));
    m.vmax_ = std::abs(std::sin(theta));
    m.swing_ = std::sin(theta);
    m.spec_ = {Family::linear_finite, M, theta, std::nullopt, std::nullopt, std::nullopt, period};
    m.finish();
    return m;
}

CavityModel make_linear_odd(int M, double theta, double period) {
    require_period(period);
    if (M < 1) throw std::invalid_argument("parameter out of range: M must be >= 1");
    require_angle(theta);
    if (theta == 0.0) throw std::invalid_argument("static cavity: theta = 0 (use make_static)");
    CavityModel m;
    m.family_ = Family::linear_odd;
    m.period_ = period;
    m.order_ = M;
    m.theta_ = theta;
    m.length_ = (M - 0.5) * period;
    m.delta1_ = Homography::translation(-2.0 * std::tan(theta));
    m.vmax_ = std::abs(std::sin(theta));
    // v -> v - 2 tan(theta) with v0 at infinity lengthens the cavity first
    m.swing_ = -std::sin(theta);
    m.spec_ = {Family::linear_odd, M, theta, std::nullopt, std::nullopt, std::nullopt, period};
    m.finish();
    return m;
}

CavityModel make_inversion(int M, double theta, double period) {
    require_period(period);
    require_angle(theta);
    if (theta == 0.0) throw std::invalid_argument("degenerate inversion: theta must be nonzero");
    if (M < 0 || (M == 0 && theta < 0.0)) {
        throw std::invalid_argument("parameter out of range: need M >= 1, or M = 0 with theta > 0");
    }
    CavityModel m;
    m.family_ = Family::inversion;
    m.period_ = period;
    m.order_ = M;
    m.theta_ = theta;
    m.length_ = (M + theta / kPi) * period;
    const double v0 = std::tan(theta);
    m.v0_ = v0;
    m.delta1_ = Homography(0.0, -v0 * v0, 1.0, 0.0);
    const double c2 = std::cos(2.0 * theta);
    m.vmax_ = std::abs(c2);
    m.swing_ = -sign_of(theta) * c2;
    m.degenerate_static_ = m.vmax_ < 1e-12;
    m.spec_ = {Family::inversion, M, theta, std::nullopt, std::nullopt, std::nullopt, period};
    m.finish();
    return m;
}

CavityModel make_homographic(int M, double v0, double v1, double period) {
    require_period(period);
    if (!std::isfinite(v0) || !std::isfinite(v1)) {
        throw std::invalid_argument("parameter out of range: v0 and v1 must be finite");
    }
    if (v0 == v1) throw std::invalid_argument("no physical solution: v0 == v1");
    if (v1 == 0.0) {
        if (v0 == 0.0) throw std::invalid_argument("degenerate inversion: v0 = v1 = 0");
        CavityModel m = make_inversion(M, std::atan(v0), period);
        m.v1_ = 0.0;
        return m;
    }
    if (M < 1) throw std::invalid_argument("parameter out of range: M must be >= 1");
    CavityModel m;
    m.family_ = Family::homographic;
    m.period_ = period;
    m.order_ = M;
    m.v0_ = v0;
    m.v1_ = v1;
    m.length_ = (M + std::atan(v0) / kPi) * period;
    m.theta_ = std::atan((1.0 + v0 * v0) / (2.0 * v1) - v0);
    m.delta1_ = Homography(-v1, -v0 * (v0 - 2.0 * v1), 1.0, -v1);
    const double phase = m.omega() * m.length_ + m.theta_;
    const double s = std::sin(phase);
    m.vmax_ = std::abs(s);
    // sin(w L(t) + theta) = sin(w L + theta) cos(w t), continued from t = 0
    m.swing_ = std::cos(phase) >= 0.0 ? s : -s;
    if (m.vmax_ >= 1.0 - 1e-15) throw std::invalid_argument("luminal wall: vmax = 1");
    m.spec_ = {Family::homographic, M, std::nullopt, v0, v1, std::nullopt, period};
    m.finish();
    return m;
}

CavityModel make_model(const ModelSpec& spec) {
    auto need = [](const std::optional<double>& x, const char* what) {
        if (!x) throw std::invalid_argument(std::string("missing parameter '") + what + "'");
        return *x;
    };
    switch (spec.family) {
        case Family::static_cavity: return make_static(need(spec.length, "L"), spec.T);
        case Family::linear_finite: return make_linear_finite(spec.M, need(spec.theta, "theta"), spec.T);
        case Family::linear_odd: return make_linear_odd(spec.M, need(spec.theta, "theta"), spec.T);
        case Family::inversion: return make_inversion(spec.M, need(spec.theta, "theta"), spec.T);
        case Family::homographic:
            return make_homographic(spec.M, need(spec.v0, "v0"), need(spec.v1, "v1"), spec.T);
    }
    throw std::invalid_argument("unknown family");
}

// ---------------------------------------------------------------------------

bool ValidationReport::admissible() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport validate(const CavityModel& model, int samples) {
    if (samples < 2) throw std::invalid_argument("validate: samples must be >= 2");
    const AuxiliaryMap aux(model);
    const double L = model.length();
    const double T = model.period();
    ValidationReport report;

    auto grid = [&](int i) { return L + T * static_cast<double>(i) / samples; };

    {
        // (i) static region, including the seam at tau = L
        CheckResult c;
        c.name = "static-region";
        double worst = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double tau = -L - T + (2.0 * L + T) * i / samples;
            const double err = std::abs(aux.f(std::min(tau, L)) - (std::min(tau, L) - 2.0 * L));
            if (err > worst) { worst = err; c.location = tau; }
        }
        const double tol = 1e-9 * L;
        c.margin = tol - worst;
        c.passed = worst <= tol;
        report.checks.push_back(c);
    }
    {
        // (ii) slope bounds, with the sampled extrema refined by Brent minimization
        const double v = model.vmax();
        const double lower = (1.0 - v) / (1.0 + v);
        const double upper = v < 1.0 ? (1.0 + v) / (1.0 - v) : std::numeric_limits<double>::infinity();
        int imin = 0, imax = 0;
        double smin = std::numeric_limits<double>::infinity(), smax = -smin;
        for (int i = 0; i < samples; ++i) {
            const double s = aux.f_slope(grid(i));
            if (s < smin) { smin = s; imin = i; }
            if (s > smax) { smax = s; imax = i; }
        }
        const double h = T / samples;
        auto refine = [&](int i, double sign) {
            auto obj = [&](double tau) { return sign * aux.f_slope(tau); };
            const double lo = std::max(L, grid(i) - h);
            return boost::math::tools::brent_find_minima(obj, lo, grid(i) + h, 52);
        };
        auto rmin = refine(imin, 1.0);
        auto rmax = refine(imax, -1.0);
        smin = std::min(smin, rmin.second);
        smax = std::max(smax, -rmax.second);
        report.min_slope = smin;
        report.max_slope = smax;

        CheckResult lo;
        lo.name = "slope-lower-bound";
        lo.margin = smin - lower * (1.0 - 1e-9);
        lo.passed = lo.margin >= 0.0;
        lo.location = rmin.first;
        CheckResult hi;
        hi.name = "slope-upper-bound";
        hi.margin = upper * (1.0 + 1e-9) - smax;
        hi.passed = hi.margin >= 0.0;
        hi.location = rmax.first;
        if (!lo.passed) {
            std::ostringstream os;
            os << "f' = " << smin << " < (1 - vmax)/(1 + vmax) = " << lower;
            lo.detail = os.str();
        }
        if (!hi.passed) {
            std::ostringstream os;
            os << "f' = " << smax << " > (1 + vmax)/(1 - vmax) = " << upper;
            hi.detail = os.str();
        }
        report.checks.push_back(lo);
        report.checks.push_back(hi);
    }
    {
        // (iii) f(tau) < tau
        CheckResult c;
        c.name = "retarded";
        c.margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < samples; ++i) {
            const double gap = grid(i) - aux.f(grid(i));
            if (gap < c.margin) { c.margin = gap; c.location = grid(i); }
        }
        c.passed = c.margin > 0.0;
        if (!c.passed) c.detail = "f(tau) >= tau";
        report.checks.push_back(c);
    }
    {
        CheckResult c;
        c.name = "periodicity";
        double worst = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double err = std::abs(aux.f(grid(i) + T) - aux.f(grid(i)) - T);
            if (err > worst) { worst = err; c.location = grid(i); }
        }
        const double tol = 1e-9 * T;
        c.margin = tol - worst;
        c.passed = worst <= tol;
        report.checks.push_back(c);
    }
    {
        // the map must be continuous through v = +-inf
        CheckResult c;
        c.name = "continuity";
        const Homography& h = model.delta1();
        c.passed = h.det() > 0.0 && (h.c() != 0.0 || h.a() / h.d() > 0.0);
        c.margin = h.det();
        if (!c.passed) c.detail = "fundamental map reverses orientation";
        report.checks.push_back(c);
    }
    {
        // Delta1(v0) = -v0 and Delta1'(v0) = 1, checked on the phase circle so
        // that v0 = inf is covered as well
        CheckResult c;
        c.name = "initial-conditions";
        const CircleLift lift(model.delta1());
        const double phi0 = model.sewing_phase();
        const double wrap = std::remainder(lift(phi0) + phi0, kPi);
        const double slope_err = std::abs(lift.slope(phi0) - 1.0);
        const double worst = std::max(std::abs(wrap), slope_err);
        c.margin = 1e-12 - worst;
        c.passed = worst <= 1e-12;
        c.location = L;
        if (!c.passed) {
            std::ostringstream os;
            os << "phase mismatch " << wrap << ", slope mismatch " << slope_err;
            c.detail = os.str();
        }
        report.checks.push_back(c);
    }
    return report;
}

}  // namespace cavity
