#pragma once

// Trajectory-only solver for Moore's equation and the cross-verification
// harness built on it.
//
// Nothing here looks at the fundamental map.  f is found by solving
// t + L(t) = tau for t with a bracketed root finder and R by iterating f down
// to the static region.  Root finding and iteration run in quad precision.

#include "cavity/catalog.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace cavity {

class TrajectorySource;

/// A wall path L(t) with L(t) = L for t < 0.
class TrajectoryHandle {
public:
    /// Exact path of a catalog model.
    static TrajectoryHandle from_model(const CavityModel& model);
    /// Monotone cubic through (t_i, L_i).  The samples must start at t = 0 and
    /// cover at least one period; beyond the last sample the path is continued
    /// periodically.  Throws std::invalid_argument on bad input or |dL/dt| >= 1.
    static TrajectoryHandle from_samples(std::vector<double> t, std::vector<double> L, double period);
    /// CSV with columns t, L; '#' lines and a non-numeric header row are skipped.
    static TrajectoryHandle from_csv(const std::string& path, double period);

    double operator()(double t) const;
    double length() const;
    double period() const;
    /// Largest |dL/dt|, from central differences at spacing T / 1e4.
    double vmax() const;
    double min_length() const;
    double max_length() const;

    const TrajectorySource& source() const { return *source_; }

private:
    explicit TrajectoryHandle(std::shared_ptr<const TrajectorySource> source);
    std::shared_ptr<const TrajectorySource> source_;
};

/// Solves t + L(t) = tau and returns t - L(t).  tol is an absolute bound on
/// t; 0 asks for full working precision.  Throws std::runtime_error when the
/// bracket does not enclose a root.
double f_from_trajectory(const TrajectoryHandle& traj, double tau, double tol = 0.0);

/// R(tau) = f^k(tau) - 2L + 2kL with k the number of steps to reach tau < L.
/// Throws std::runtime_error after 10^6 steps.
double moore_from_trajectory(const TrajectoryHandle& traj, double tau, double tol = 0.0);

struct VerificationCheck {
    std::string name;
    double value = 0.0;      ///< worst residual seen
    double threshold = 0.0;  ///< pass iff value <= threshold
    std::size_t samples = 0;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    double t_max = 0.0;
    std::size_t samples = 0;
    double moore_residual = 0.0;
    double f_residual = 0.0;
    double oracle_deviation = 0.0;
    double reconstruction_error = 0.0;
    double energy_deviation = 0.0;
    std::vector<VerificationCheck> checks;

    bool passed() const;
    const VerificationCheck* find(const std::string& name) const;
};

/// Switches for the slow checks.
struct VerifyOptions {
    bool energy = true;   ///< closed form vs quadrature (odd-resonance family)
    bool plateau = true;  ///< sub-Casimir plateau (finite-v0 linear family, t_max >= 20 T)
    bool growth = true;   ///< fitted exponential rate (hyperbolic maps)
};

/// Runs every applicable check on `samples` points of [0, t_max].  Errors
/// raised while evaluating become failed checks.
VerificationReport verify_model(const CavityModel& model, double t_max, std::size_t samples = 1000,
                                VerifyOptions options = {});
/// Same checks at explicit times (finite, nonnegative).
VerificationReport verify_model(const CavityModel& model, const std::vector<double>& times,
                                VerifyOptions options = {});

}  // namespace cavity
