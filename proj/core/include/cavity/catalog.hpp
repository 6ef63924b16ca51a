#pragma once

// The exactly solvable cavity families.
//
// A CavityModel bundles the static length L, the period T of the wall motion
// and the fundamental map (the homography governing one period).  Everything
// else (auxiliary function, Moore's function, energies) is derived from these
// three objects by the moore and observables modules.

#include "cavity/mobius.hpp"

#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace cavity {

enum class Family { static_cavity, linear_finite, linear_odd, inversion, homographic };

const char* to_string(Family family);
/// Accepts the names used in model JSON ("linear-finite", ...).
Family family_from_string(const std::string& name);

/// Plain parameter record; mirrors the model JSON schema.
struct ModelSpec {
    Family family = Family::linear_finite;
    int M = 1;
    std::optional<double> theta;
    std::optional<double> v0;
    std::optional<double> v1;
    std::optional<double> length;  ///< static cavities only
    double T = std::numbers::pi;
};

class CavityModel {
public:
    Family family() const { return family_; }
    double length() const { return length_; }
    double period() const { return period_; }
    double omega() const { return 2.0 * std::numbers::pi / period_; }
    /// Fundamental eigenfrequency pi / L.
    double omega1() const { return std::numbers::pi / length_; }
    double omega_ratio() const { return omega() / omega1(); }
    int order() const { return order_; }
    /// Angle parameter; its meaning depends on the family.
    double theta() const { return theta_; }
    /// tan(omega L / 2); empty for the odd-resonance family where it is infinite.
    std::optional<double> v0() const { return v0_; }
    double v1() const { return v1_; }
    double vmax() const { return vmax_; }
    /// Peak-to-peak wall excursion.
    double amplitude() const;
    const Homography& delta1() const { return delta1_; }
    const MapClass& map_class() const { return map_class_; }

    /// Wall path is L(t) = L + [asin(s cos wt) - asin(s)] / w for t >= 0.
    double swing() const { return swing_; }

    /// omega L / 2, the phase at which motion is sewn onto the static past.
    double sewing_phase() const { return 0.5 * omega() * length_; }

    /// Inversion maps with |theta| = pi/4 do not move the wall at all.
    bool degenerate_static() const { return degenerate_static_; }

    ModelSpec spec() const { return spec_; }

    /// Copies with one field overwritten and no validation.  Used for fault
    /// injection in verification tests.
    CavityModel with_fundamental_map(const Homography& h) const;
    CavityModel with_vmax(double vmax) const;
    /// True for copies made by with_fundamental_map.
    bool map_overridden() const { return map_overridden_; }

private:
    friend CavityModel make_static(double, double);
    friend CavityModel make_linear_finite(int, double, double);
    friend CavityModel make_linear_odd(int, double, double);
    friend CavityModel make_inversion(int, double, double);
    friend CavityModel make_homographic(int, double, double, double);

    CavityModel() = default;
    void finish();

    Family family_ = Family::static_cavity;
    double length_ = 1.0;
    double period_ = std::numbers::pi;
    int order_ = 0;
    double theta_ = 0.0;
    std::optional<double> v0_;
    double v1_ = 0.0;
    double vmax_ = 0.0;
    double swing_ = 0.0;
    bool degenerate_static_ = false;
    bool map_overridden_ = false;
    Homography delta1_;
    MapClass map_class_;
    ModelSpec spec_;
};

CavityModel make_static(double length, double period = std::numbers::pi);

/// Delta1(v) = v - 2 tan(theta), L = (M + theta/pi) T.
CavityModel make_linear_finite(int M, double theta, double period = std::numbers::pi);

/// Odd resonance omega = omega_{2M-1}, L = (M - 1/2) T, amplitude set by theta.
CavityModel make_linear_odd(int M, double theta, double period = std::numbers::pi);

/// Delta1(v) = -tan^2(theta) / v, L = (M + theta/pi) T.  M = 0 needs theta > 0.
CavityModel make_inversion(int M, double theta, double period = std::numbers::pi);

/// Delta1(v) = -(v1 v + v0 (v0 - 2 v1)) / (v - v1), L = (M + atan(v0)/pi) T.
/// v1 == 0 yields the inversion model.
CavityModel make_homographic(int M, double v0, double v1, double period = std::numbers::pi);

CavityModel make_model(const ModelSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = true;
    double margin = 0.0;    ///< distance to the violated bound (negative when failed)
    double location = 0.0;  ///< tau where the worst value was seen
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    double min_slope = 0.0;  ///< min of f' over one period
    double max_slope = 0.0;
    bool admissible() const;
    const CheckResult* find(const std::string& name) const;
};

/// Admissibility of the auxiliary function built from the model, sampled at
/// `samples` points per period (plus local refinement of the slope extrema).
ValidationReport validate(const CavityModel& model, int samples = 512);

}  // namespace cavity
