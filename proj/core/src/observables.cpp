#include "cavity/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cavity {

namespace {

constexpr double kPi = std::numbers::pi;

double static_density(const CavityModel& m) { return -m.omega1() * m.omega1() / (48.0 * kPi); }

long long branch_index(double tau, double period) {
    const double x = tau / period + 0.5;
    double k = std::floor(x);
    // snap values that sit on a period boundary up to rounding
    if (std::abs(x - (k + 1.0)) <= 1e-12 * std::max(1.0, std::abs(x))) k += 1.0;
    return static_cast<long long>(k);
}

// Antiderivative of (1 + (u - c)^2) / (1 + u^2)^2 in u.
double branch_primitive(double u, double c) {
    const double q = 1.0 + u * u;
    return std::atan(u) + c * c * (u / (2.0 * q) + 0.5 * std::atan(u)) + c / q;
}

double branch_primitive_at_infinity(double c) { return 0.5 * kPi * (1.0 + 0.5 * c * c); }

// Tr(H^T H)/det(H) for Delta_n of the homographic form, n real.
double trace_ratio_from_eigen(const CavityModel& model, double n) {
    const double v0 = model.v0().value_or(0.0);
    const double v1 = model.v1();
    const double s2 = v0 * (2.0 * v1 - v0);
    const double scale = v1 * v1 + std::abs(s2);
    if (std::abs(s2) <= 1e-12 * scale) return 2.0 + n * n / (v1 * v1);
    const std::complex<double> s = std::sqrt(std::complex<double>(s2));
    const std::complex<double> ratio = (-v1 + s) / (-v1 - s);
    const std::complex<double> rn = std::pow(ratio, n);
    const double power_sum = (rn + 1.0 / rn).real();
    const double plus = s2 + 2.0 + 1.0 / s2;
    const double minus = s2 - 2.0 + 1.0 / s2;
    return 0.25 * power_sum * plus - 0.5 * minus;
}

}  // namespace

double casimir_density(const CavityModel& model) {
    return kPi / (24.0 * model.length() * model.length());
}

double density_weight(const CavityModel& model) {
    const double w = model.omega(), w1 = model.omega1();
    return (w * w - w1 * w1) / (48.0 * kPi);
}

double density_profile(const MooreEvaluator& ev, double tau) {
    const CavityModel& m = ev.model();
    const std::size_t n = ev.map_index(tau);
    if (n == 0) return static_density(m);
    const CircleLift lift(ev.map_power(n));
    const double s = lift.slope(0.5 * m.omega() * tau);
    const double w = m.omega();
    return -w * w / (48.0 * kPi) + density_weight(m) * s * s;
}

double energy_density_2d(const MooreEvaluator& ev, double t, double x) {
    const double Lt = ev.trajectory(t);
    if (!(x >= 0.0) || x > Lt * (1.0 + 1e-12)) {
        throw std::out_of_range("energy_density_2d: x outside the cavity [0, L(t)]");
    }
    return density_profile(ev, t + x) + density_profile(ev, t - x);
}

QuadratureResult slope_square_integral(const MooreEvaluator& ev, double a, double b, double rel_tol) {
    if (!(b >= a)) throw std::invalid_argument("slope_square_integral: need a <= b");
    const CavityModel& m = ev.model();
    const double L = m.length();
    const double T = m.period();
    const double half_omega = 0.5 * m.omega();

    std::vector<double> edges{a};
    auto push = [&](double p) {
        if (p > edges.back() && p < b) edges.push_back(p);
    };
    // merge the three sorted families of breakpoints
    std::vector<double> points;
    if (L > a && L < b) points.push_back(L);
    ev.reserve_until(b);
    for (std::size_t k = 1;; ++k) {
        const double lk = ev.milestone(k);
        if (lk >= b) break;
        if (lk > a) points.push_back(lk);
    }
    for (double k = std::ceil(a / T - 0.5); (k + 0.5) * T < b; k += 1.0) {
        if ((k + 0.5) * T > a) points.push_back((k + 0.5) * T);
    }
    std::sort(points.begin(), points.end());
    for (double p : points) push(p);
    edges.push_back(b);

    struct Piece {
        std::size_t n;
        double lo, hi;  // image phases (n > 0) or tau (n == 0)
    };
    std::vector<Piece> pieces;
    double scale = 0.0;  // rough size of the whole integral
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double p = edges[i], q = edges[i + 1];
        const std::size_t n = ev.map_index(0.5 * (p + q));
        if (n == 0) {
            pieces.push_back({0, p, q});
            scale += q - p;
            continue;
        }
        const CircleLift lift(ev.map_power(n));
        const double lo = lift(half_omega * p), hi = lift(half_omega * q);
        pieces.push_back({n, lo, hi});
        scale += lift.slope_at_image_integral(lo, hi) / half_omega;
    }
    // pieces far below the total are only needed to the total's accuracy
    const double abs_tol = rel_tol * scale / static_cast<double>(std::max<std::size_t>(pieces.size(), 1)) * 1e-2;

    QuadratureResult total;
    for (const Piece& piece : pieces) {
        if (piece.n == 0) {
            total.value += piece.hi - piece.lo;
            total.l1 += piece.hi - piece.lo;
            continue;
        }
        const CircleLift lift(ev.map_power(piece.n));
        // slope^2 dphi = slope d(Phi), and dtau = dphi / half_omega
        auto g = [&lift](double image) { return lift.slope_at_image(image); };
        const QuadratureResult r = integrate(g, piece.lo, piece.hi, {}, rel_tol, abs_tol * half_omega);
        total.value += r.value / half_omega;
        total.error += r.error / half_omega;
        total.l1 += r.l1 / half_omega;
    }
    return total;
}

double total_energy_quadrature(const MooreEvaluator& ev, double t, double rel_tol) {
    if (!(rel_tol >= 1e-12)) throw std::invalid_argument("total_energy_quadrature: rel_tol must be >= 1e-12");
    const CavityModel& m = ev.model();
    const double Lt = ev.trajectory(t);
    const double a = t - Lt, b = t + Lt;
    const QuadratureResult second = slope_square_integral(ev, a, b, rel_tol);
    const double w = m.omega();
    return -w * w * (b - a) / (48.0 * kPi) + density_weight(m) * second.value;
}

double total_energy_closed(const MooreEvaluator& ev, double t) {
    const CavityModel& m = ev.model();
    if (m.family() != Family::linear_odd) {
        throw std::invalid_argument("closed form unavailable for family " + std::string(to_string(m.family())));
    }
    const double L = m.length();
    const double T = m.period();
    const double w = m.omega();
    if (t < 0.0) return -kPi / (24.0 * L);
    const double Lt = ev.trajectory(t);
    const double a = t - Lt, b = t + Lt;
    const double shift = m.delta1().b() / m.delta1().d();  // Delta_1(v) = v + shift

    const long long nb = static_cast<long long>(std::floor(b / (2.0 * L) + 0.5));
    const long long ja = branch_index(a, T);
    const long long jb = branch_index(b, T);
    // the milestone (2 nb - 1) L opens branch jm
    const long long jm = ((2 * nb - 1) * (2 * m.order() - 1) + 1) / 2;
    const double ca = static_cast<double>(nb - 1) * shift;
    const double cb = static_cast<double>(nb) * shift;

    auto local_tan = [&](double tau, long long j) {
        return std::tan(0.5 * w * tau - static_cast<double>(j) * kPi);
    };
    double J = 0.0;
    J += branch_primitive_at_infinity(ca) - branch_primitive(local_tan(a, ja) + ca, ca);
    J += static_cast<double>(jm - 1 - ja) * 2.0 * branch_primitive_at_infinity(ca);
    J += static_cast<double>(jb - jm) * 2.0 * branch_primitive_at_infinity(cb);
    J += branch_primitive(local_tan(b, jb) + cb, cb) + branch_primitive_at_infinity(cb);

    return -w * w * (b - a) / (48.0 * kPi) + density_weight(m) * (2.0 / w) * J;
}

double total_energy_closed_as_printed(const MooreEvaluator& ev, double t, bool balanced_radical) {
    const CavityModel& m = ev.model();
    if (m.family() != Family::linear_odd) {
        throw std::invalid_argument("closed form unavailable for family " + std::string(to_string(m.family())));
    }
    const double L = m.length();
    const double w = m.omega();
    const double M = m.order();
    const double th = m.theta();
    const double tn = std::tan(th);
    const double mm = M * (M - 1.0);
    const double odd = 2.0 * M - 1.0;
    const double alpha = t / (2.0 * L) - std::floor(t / (2.0 * L));
    const double sw = std::sin(w * t);
    const double lin = t / L + 1.0 - 2.0 * alpha;
    const double root = std::sqrt(1.0 + sw * sw * tn * tn);
    const double num = 1.0 + root - lin * sw * tn;
    const double den = balanced_radical ? 1.0 - root + lin * sw * tn
                                        : 1.0 - std::sqrt(1.0 + sw * sw * tn * tn + lin * sw * tn);
    const double sgn = (th > 0.0) - (th < 0.0);
    const double bracket = 0.5 * kPi * sgn - std::atan(num / (std::tan(0.5 * w * t) * den));
    const double Lt = ev.trajectory(t);
    const double tp = std::tan(0.5 * w * (t + Lt));

    double e = mm * kPi * tn * tn / (12.0 * L * L * L) * t * t;
    e += mm * tn * tn / (3.0 * odd * L * L) * bracket * (t + (1.0 - 2.0 * alpha) * L);
    e -= odd * odd * kPi / (24.0 * L * L) * Lt;
    e += mm * kPi / (6.0 * L);
    e += mm * kPi * tn * tn / (3.0 * L) * alpha * (1.0 - alpha);
    const double k = t / (2.0 * L) - alpha;
    const double top = 1.0 + 2.0 * k * k * tn * tn + lin * tp * tn;
    const double bottom = 1.0 + std::pow(tp + (t / L + 2.0 - 2.0 * alpha) * tn, 2);
    e += mm * tn / (3.0 * odd * L) * top / bottom;
    return e;
}

double quadratic_coefficient(const CavityModel& model) {
    const double tn = std::tan(model.theta());
    const double W = density_weight(model);
    switch (model.family()) {
        case Family::linear_finite: {
            // 2M packets in the window, one of them cut by a milestone
            const double th = model.theta();
            const double M = model.order();
            const double packets = 2.0 * M + (2.0 * th + std::sin(2.0 * th)) / kPi;
            return W * tn * tn * packets / (2.0 * M * M * model.period());
        }
        case Family::linear_odd:
            return W * tn * tn / model.length();
        default:
            throw std::invalid_argument("quadratic coefficient defined for the linear families only");
    }
}

double quadratic_coefficient_as_printed(const CavityModel& model) {
    if (model.family() != Family::linear_finite) {
        throw std::invalid_argument("printed coefficient refers to the finite-v0 linear family");
    }
    const double w = model.omega(), w1 = model.omega1();
    const double tn = std::tan(model.theta());
    return w * (w * w - w1 * w1) * tn * tn / (24.0 * model.order() * kPi);
}

AsymptoticEnergy asymptotic_energy(const MooreEvaluator& ev, double t) {
    const CavityModel& m = ev.model();
    const double T = m.period();
    const double L = m.length();
    AsymptoticEnergy out;
    out.early = t < 20.0 * T;
    switch (m.family()) {
        case Family::static_cavity:
            out.value = -kPi / (24.0 * L);
            break;
        case Family::linear_finite:
            out.value = quadratic_coefficient(m) * t * t;
            break;
        case Family::linear_odd: {
            const double M = m.order();
            const double odd = 2.0 * M - 1.0;
            const double tn = std::tan(m.theta());
            // the map v -> v - 2 tan(theta) jumps at the period marks when theta < 0
            const double step = m.theta() < 0.0 ? 1.0 : 0.0;
            const double k = std::floor(t / T) + step;
            out.value = M * (M - 1.0) * kPi * tn * tn / (3.0 * odd * odd * L) * k * k;
            break;
        }
        case Family::inversion: {
            const int sgn = m.theta() > 0.0 ? 1 : -1;
            const double P = (4.0 * m.order() + sgn) * T;
            const int samples = 64;
            double sum = 0.0;
            for (int i = 0; i < samples; ++i) sum += total_energy_quadrature(ev, t + P * i / samples);
            out.value = sum / samples;
            break;
        }
        case Family::homographic: {
            // milestones settle to a fixed spacing; n(t) grows by one per spacing
            const std::size_t far = 64;
            const double spacing = ev.milestone(far) - ev.milestone(far - 1);
            const double w = m.omega();
            out.value = -w * w * L / (24.0 * kPi) + density_weight(m) * L * trace_ratio_from_eigen(m, t / spacing);
            break;
        }
    }
    return out;
}

double trace_det_ratio(const Homography& h) {
    return (h.a() * h.a() + h.b() * h.b() + h.c() * h.c() + h.d() * h.d()) / h.det();
}

double trace_det_ratio_closed(const CavityModel& model, long long n) {
    if (model.family() != Family::homographic && model.family() != Family::inversion) {
        throw std::invalid_argument("trace formula needs a homographic or inversion model");
    }
    if (n < 0) throw std::invalid_argument("trace formula: n must be nonnegative");
    return trace_ratio_from_eigen(model, static_cast<double>(n));
}

double period_energy_integral(const CavityModel& model, long long n) {
    if (n < 0) throw std::invalid_argument("period_energy_integral: n must be nonnegative");
    return density_weight(model) * trace_det_ratio(power(model.delta1(), n));
}

double classical_energy(const MooreEvaluator& ev, double t, double rel_tol) {
    const double L = ev.model().length();
    const double Lt = ev.trajectory(t);
    const QuadratureResult r = slope_square_integral(ev, t - Lt, t + Lt, rel_tol);
    return kPi / (48.0 * L * L) * r.value;
}

std::vector<CoefficientRow> coefficient_table(int M_max) {
    if (M_max < 1) throw std::invalid_argument("coefficient_table: M_max must be >= 1");
    std::vector<CoefficientRow> rows;
    for (int M = 1; M <= M_max; ++M) {
        const double odd = 2.0 * M - 1.0;
        CoefficientRow r;
        r.M = M;
        r.quantum = 4.0 * M * (M - 1.0) / (odd * odd);
        r.classical = 1.0 / (odd * odd);
        r.sum = r.quantum + r.classical;
        rows.push_back(r);
    }
    return rows;
}

const char* to_string(EnergyMethod method) {
    switch (method) {
        case EnergyMethod::quadrature: return "quadrature";
        case EnergyMethod::closed: return "closed";
        case EnergyMethod::asymptotic: return "asymptotic";
        case EnergyMethod::classical: return "classical";
    }
    return "unknown";
}

EnergyMethod energy_method_from_string(const std::string& name) {
    for (EnergyMethod m : {EnergyMethod::quadrature, EnergyMethod::closed, EnergyMethod::asymptotic,
                           EnergyMethod::classical}) {
        if (name == to_string(m)) return m;
    }
    throw std::invalid_argument("unknown energy method '" + name + "'");
}

EnergySeries energy_series(const MooreEvaluator& ev, const std::vector<double>& times, EnergyMethod method,
                           double rel_tol) {
    EnergySeries out;
    out.method = method;
    out.rel_tol = rel_tol;
    out.t = times;
    out.energy.reserve(times.size());
    for (double t : times) {
        switch (method) {
            case EnergyMethod::quadrature: out.energy.push_back(total_energy_quadrature(ev, t, rel_tol)); break;
            case EnergyMethod::closed: out.energy.push_back(total_energy_closed(ev, t)); break;
            case EnergyMethod::asymptotic: out.energy.push_back(asymptotic_energy(ev, t).value); break;
            case EnergyMethod::classical: out.energy.push_back(classical_energy(ev, t, rel_tol)); break;
        }
    }
    return out;
}

DensityProfile density_snapshot(const MooreEvaluator& ev, double t, const std::vector<double>& xs) {
    DensityProfile out;
    out.t = t;
    out.rho0 = casimir_density(ev.model());
    out.x = xs;
    out.values.reserve(xs.size());
    for (double x : xs) out.values.push_back(energy_density_2d(ev, t, x));
    return out;
}

std::vector<std::size_t> find_packets(const std::vector<double>& values, double threshold) {
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > threshold && values[i] >= values[i - 1] && values[i] > values[i + 1]) peaks.push_back(i);
    }
    return peaks;
}

}  // namespace cavity
