#include "cavity/stability.hpp"

#include "cavity/moore.hpp"
#include "parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace cavity {

namespace {

double eigen_ratio(const MapClass& mc) {
    const double a = std::abs(mc.lambda1), b = std::abs(mc.lambda2);
    return std::max(a, b) / std::min(a, b);
}

double asymptotic_spacing(const CavityModel& model) {
    const AuxiliaryMap aux(model);
    double prev = model.length();
    double next = aux.f_inverse(prev);
    for (int i = 0; i < 96; ++i) {
        prev = next;
        next = aux.f_inverse(prev);
    }
    return next - prev;
}

void require_above_one(double x) {
    if (!(x > 1.0)) throw std::domain_error("omega ratio must exceed 1");
}

}  // namespace

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::stable: return "stable";
        case Verdict::power_like: return "power_like";
        case Verdict::exponential: return "exponential";
        case Verdict::forbidden: return "forbidden";
        case Verdict::undefined: return "undefined";
    }
    return "undefined";
}

StabilityReport classify_model(const CavityModel& model) {
    StabilityReport out;
    out.family = model.family();
    out.map_class = model.map_class();
    switch (model.family()) {
        case Family::static_cavity:
        case Family::inversion:
            out.verdict = Verdict::stable;
            break;
        case Family::linear_finite:
            out.verdict = Verdict::power_like;
            out.energy_exponent = 2.0;
            break;
        case Family::linear_odd:
            if (model.order() == 1) {
                out.verdict = Verdict::stable;
            } else {
                out.verdict = Verdict::power_like;
                out.energy_exponent = 2.0;
            }
            break;
        case Family::homographic:
            switch (out.map_class.kind) {
                case MapKind::elliptic:
                    out.verdict = Verdict::stable;
                    break;
                case MapKind::parabolic:
                    out.verdict = Verdict::power_like;
                    out.energy_exponent = 2.0;
                    break;
                case MapKind::hyperbolic: {
                    out.verdict = Verdict::exponential;
                    out.eigen_ratio = eigen_ratio(out.map_class);
                    const double spacing = asymptotic_spacing(model);
                    out.recurrence_time = spacing;
                    out.growth_rate = std::log(out.eigen_ratio) / spacing;
                    break;
                }
            }
            break;
    }
    return out;
}

double growth_rate_per_round_trip(const CavityModel& model) {
    return std::log(eigen_ratio(model.map_class())) / (2.0 * model.length());
}

double amplitude_frequency_curve(double omega_ratio) {
    require_above_one(omega_ratio);
    return std::abs(1.0 - 2.0 / omega_ratio * std::floor(0.5 * omega_ratio + 0.5));
}

double instability_threshold(double omega_ratio) {
    require_above_one(omega_ratio);
    return std::abs(omega_ratio - std::floor(omega_ratio + 0.5)) / omega_ratio;
}

double max_amplitude(double omega_ratio) {
    if (!(omega_ratio > 0.0)) throw std::domain_error("omega ratio must be positive");
    return 1.0 / omega_ratio;
}

Verdict classify_point(double omega_ratio, double amplitude_ratio, double tolerance) {
    if (!(omega_ratio > 0.0) || !(amplitude_ratio >= 0.0) || !(amplitude_ratio < 1.0)) return Verdict::undefined;
    if (amplitude_ratio > max_amplitude(omega_ratio)) return Verdict::forbidden;
    if (omega_ratio <= 1.0 || amplitude_ratio == 0.0) return Verdict::stable;
    if (omega_ratio == std::round(omega_ratio)) return Verdict::power_like;
    const double threshold = instability_threshold(omega_ratio);
    if (std::abs(amplitude_ratio - threshold) <= tolerance) return Verdict::power_like;
    return amplitude_ratio > threshold ? Verdict::exponential : Verdict::stable;
}

std::vector<PhasePoint> phase_diagram_scan(Range omega, Range amplitude, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("phase diagram grid needs at least 2 x 2 points");
    const double dx = (omega.hi - omega.lo) / (nx - 1);
    const double dy = (amplitude.hi - amplitude.lo) / (ny - 1);
    std::vector<PhasePoint> out(static_cast<std::size_t>(nx) * ny);

    parallel_for(out.size(), [&](std::size_t k) {
        const std::size_t i = k % static_cast<std::size_t>(nx);
        const std::size_t j = k / static_cast<std::size_t>(nx);
        PhasePoint& p = out[k];
        p.omega_ratio = omega.lo + dx * static_cast<double>(i);
        p.amplitude_ratio = amplitude.lo + dy * static_cast<double>(j);
        p.verdict = classify_point(p.omega_ratio, p.amplitude_ratio, 0.5 * std::abs(dy));
        if (p.verdict == Verdict::exponential &&
            std::abs(p.omega_ratio - std::round(p.omega_ratio)) <= 0.5 * std::abs(dx)) {
            p.verdict = Verdict::power_like;
        }
    });
    return out;
}

}  // namespace cavity
