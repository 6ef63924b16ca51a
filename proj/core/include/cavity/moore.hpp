#pragma once

// Auxiliary function f, milestones, map index and Moore's function R.
//
// For tau < L the wall has not moved yet and f(tau) = tau - 2L.  For tau >= L
// f acts on the phase phi = omega tau / 2 as the lift of the fundamental map,
// shifted by the multiple of pi that makes f continuous at tau = L.  Moore's
// function follows by iterating f down into the static region.

#include "cavity/catalog.hpp"
#include "cavity/mobius.hpp"

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

namespace cavity {

/// f and its inverse for one model.  Immutable.
template <class Real>
class BasicAuxiliaryMap {
public:
    /// Fundamental map [[a, b], [c, d]] of a cavity with static length L.
    BasicAuxiliaryMap(Real length, Real omega, Real a, Real b, Real c, Real d);

    Real f(Real tau) const;
    Real f_inverse(Real tau) const;
    /// df/dtau (1 in the static region, right derivative at tau = L).
    Real f_slope(Real tau) const;

private:
    Real length_;
    Real half_omega_;
    BasicCircleLift<Real> forward_;
    BasicCircleLift<Real> backward_;
    Real forward_shift_ = 0;
    Real backward_shift_ = 0;
};

class AuxiliaryMap : public BasicAuxiliaryMap<double> {
public:
    explicit AuxiliaryMap(const CavityModel& model);
};

template <class Real>
BasicAuxiliaryMap<Real>::BasicAuxiliaryMap(Real length, Real omega, Real a, Real b, Real c, Real d)
    : length_(length), half_omega_(omega / 2), forward_(a, b, c, d), backward_(d, -b, -c, a) {
    using std::atan, std::round;
    const Real pi = 4 * atan(Real(1));
    const Real phi0 = half_omega_ * length;
    // f(L) = -L and f^{-1}(-L) = L; for an admissible map these offsets are
    // exact multiples of pi
    forward_shift_ = pi * round((-phi0 - forward_(phi0)) / pi);
    backward_shift_ = pi * round((phi0 - backward_(-phi0)) / pi);
}

template <class Real>
Real BasicAuxiliaryMap<Real>::f(Real tau) const {
    if (tau < length_) return tau - 2 * length_;
    return (forward_(half_omega_ * tau) + forward_shift_) / half_omega_;
}

template <class Real>
Real BasicAuxiliaryMap<Real>::f_inverse(Real tau) const {
    if (tau < -length_) return tau + 2 * length_;
    return (backward_(half_omega_ * tau) + backward_shift_) / half_omega_;
}

template <class Real>
Real BasicAuxiliaryMap<Real>::f_slope(Real tau) const {
    if (tau < length_) return Real(1);
    return forward_.slope(half_omega_ * tau);
}

struct PreciseMoore;

class MooreEvaluator {
public:
    explicit MooreEvaluator(CavityModel model);
    MooreEvaluator(const MooreEvaluator& other);
    MooreEvaluator& operator=(const MooreEvaluator&) = delete;

    const CavityModel& model() const { return model_; }
    const AuxiliaryMap& auxiliary() const { return aux_; }

    double f_eval(double tau) const { return aux_.f(tau); }
    double f_inverse_eval(double tau) const { return aux_.f_inverse(tau); }

    /// L_n, with L_0 = L.
    double milestone(std::size_t n) const;
    /// n(tau): 0 for tau < L, k for tau in [L_{k-1}, L_k).
    std::size_t map_index(double tau) const;
    /// Grows the milestone cache so that every tau <= tau_max is covered.
    void reserve_until(double tau_max) const;

    /// Evaluated in quad precision and rounded; R is extremely steep inside
    /// the packets of unstable models.
    double moore_eval(double tau) const;
    /// R'(tau) as the product of f' along the iteration chain.
    double moore_slope(double tau) const;

    /// Delta_n = n-fold composition of the fundamental map.
    Homography map_power(std::size_t n) const;

    double trajectory(double t) const;
    double wall_velocity(double t) const;
    /// (t, L(t)) reconstructed from the characteristic pair (tau, f(tau)).
    std::pair<double, double> trajectory_from_characteristic(double tau) const;

    /// R(t + L(t)) - R(t - L(t)) - 2L with every step carried out in quad
    /// precision.
    double moore_residual(double t) const;

private:
    void grow_to(double tau) const;

    CavityModel model_;
    AuxiliaryMap aux_;
    std::shared_ptr<const PreciseMoore> precise_;
    mutable std::shared_mutex mutex_;
    mutable std::vector<double> milestones_;
};

}  // namespace cavity
