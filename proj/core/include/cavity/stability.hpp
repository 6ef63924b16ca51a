#pragma once

// Stability verdicts for catalog models and the (frequency, amplitude)
// phase diagram of the homographic family.

#include "cavity/catalog.hpp"
#include "cavity/mobius.hpp"

#include <optional>
#include <vector>

namespace cavity {

enum class Verdict { stable, power_like, exponential, forbidden, undefined };

const char* to_string(Verdict verdict);

struct StabilityReport {
    Family family = Family::static_cavity;
    MapClass map_class;
    Verdict verdict = Verdict::undefined;
    /// Exponential only: ln|lambda_big / lambda_small| per recurrence time.
    std::optional<double> growth_rate;
    /// Exponential only: asymptotic milestone spacing, the time over which the
    /// map index grows by one.
    std::optional<double> recurrence_time;
    /// Power-like only.
    std::optional<double> energy_exponent;
    /// |lambda_big / lambda_small| (1 for elliptic and parabolic maps).
    double eigen_ratio = 1.0;
};

StabilityReport classify_model(const CavityModel& model);

/// Same rate expressed per 2L instead of per recurrence time.
double growth_rate_per_round_trip(const CavityModel& model);

/// Delta L / L = |1 - (2 / x) floor(x / 2 + 1/2)| for the finite-v0 linear
/// family at x = omega / omega1.  Requires x > 1.
double amplitude_frequency_curve(double omega_ratio);

/// Minimal Delta L / L for exponential instability, |x - floor(x + 1/2)| / x.
double instability_threshold(double omega_ratio);

/// Luminal bound 1 / x on Delta L / L.
double max_amplitude(double omega_ratio);

struct PhasePoint {
    double omega_ratio = 0.0;
    double amplitude_ratio = 0.0;
    Verdict verdict = Verdict::undefined;
};

/// Verdict at one point.  Points within `tolerance` of the threshold curve
/// and points on integer resonance lines count as power-like.
Verdict classify_point(double omega_ratio, double amplitude_ratio, double tolerance = 0.0);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// nx * ny grid, row-major in amplitude (the omega index runs fastest).
/// Power-like is assigned within half a grid cell of the threshold curve and
/// of the integer resonance lines.
std::vector<PhasePoint> phase_diagram_scan(Range omega, Range amplitude, int nx, int ny);

}  // namespace cavity
