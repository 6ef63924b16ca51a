#pragma once

// Real Moebius (homographic) maps v -> (a v + b) / (c v + d).
//
// Every map in the cavity catalog is one of these, and all of the n-fold
// compositions needed to evaluate Moore's function reduce to 2x2 matrix
// powers.  The second half of the header contains CircleLift, which turns a
// homography acting on v = tan(phi) into a continuous, strictly increasing
// map of the phase phi.  That lift is what the rest of the library uses to
// avoid ever evaluating tan() near its poles.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace cavity {

class Homography {
public:
    constexpr Homography() = default;
    /// Throws std::invalid_argument if the matrix is singular or not finite.
    Homography(double a, double b, double c, double d);

    /// Same as the four-argument constructor, but with the determinant
    /// supplied by the caller.  Matrix powers of hyperbolic maps have
    /// determinants far below the rounding noise of ad - bc.
    static Homography with_determinant(double a, double b, double c, double d, double det);

    static Homography identity() { return {1.0, 0.0, 0.0, 1.0}; }
    /// v -> v + shift
    static Homography translation(double shift) { return {1.0, shift, 0.0, 1.0}; }
    /// Phase rotation: tan(phi) -> tan(phi + angle).
    static Homography rotation(double angle);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return det_; }
    double trace() const { return a_ + d_; }

    /// Location of the pole -d/c; +inf when c == 0.
    double pole() const;

    /// Extended-real action.  At the pole the right-hand limit is returned,
    /// at +-inf the limit a/c (or a signed infinity when c == 0).
    double apply(double v) const;
    double operator()(double v) const { return apply(v); }

    /// det / (c v + d)^2.  Throws std::domain_error at the pole.
    double derivative_at(double v) const;

    Homography inverse() const;

    /// Same map, matrix divided by its largest-magnitude coefficient.
    Homography normalized() const;

    /// True when the two matrices are proportional within rel_tol.
    bool projectively_equal(const Homography& other, double rel_tol = 1e-12) const;

private:
    double a_ = 1.0, b_ = 0.0, c_ = 0.0, d_ = 1.0;
    double det_ = 1.0;
};

/// h1 o h2, renormalized.
Homography compose(const Homography& h1, const Homography& h2);

/// n-fold composition h o h o ... o h (power(h, 0) is the identity).
Homography power(const Homography& h, long long n);

enum class MapKind { elliptic, parabolic, hyperbolic };

const char* to_string(MapKind kind);

struct MapClass {
    MapKind kind = MapKind::parabolic;
    /// (trace + sqrt(disc)) / 2 and (trace - sqrt(disc)) / 2 of the matrix as stored.
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    double discriminant = 0.0;  ///< trace^2 - 4 det
};

/// Tolerance separating parabolic maps from the other two kinds.
double degeneracy_tolerance(const Homography& h);

MapClass classify(const Homography& h);

/// Schwarzian derivative g'''/g' - 3/2 (g''/g')^2 by central differences
/// with two Richardson levels.  The step is scaled by max(1, |v|) and must stay
/// well inside the distance to the nearest singularity of g.  Throws
/// std::domain_error when g'(v) vanishes.
double schwarzian_at(const std::function<double(double)>& g, double v, double step = 1e-2);
/// Same differences applied to the stored matrix in quad precision, which
/// keeps nearly constant maps (high powers of hyperbolic maps) measurable.
double schwarzian_at(const Homography& h, double v, double step = 1e-2);

/// Continuous lift of a homography (det > 0) to the phase line.
///
/// With v = tan(phi) the map induces phi -> Phi(phi) defined modulo pi; the
/// lift picks the continuous, increasing representative with
/// Phi(phi + pi) = Phi(phi) + pi.  The overall additive multiple of pi is
/// arbitrary and left to the caller.  Internally the matrix is split into
/// rotation * diag(s1, s2) * rotation so that slopes stay positive even for
/// very ill-conditioned powers.
///
/// Real is double for ordinary use; the Moore iteration instantiates it with
/// a quad-precision type.
template <class Real>
class BasicCircleLift {
public:
    BasicCircleLift() = default;
    /// Matrix [[a, b], [c, d]] acting as v -> (a v + b) / (c v + d).
    BasicCircleLift(Real a, Real b, Real c, Real d);
    BasicCircleLift(Real a, Real b, Real c, Real d, Real det);
    explicit BasicCircleLift(const Homography& h)
        : BasicCircleLift(Real(h.a()), Real(h.b()), Real(h.c()), Real(h.d()), Real(h.det())) {}

    Real operator()(Real phase) const;
    /// dPhi/dphi = (1 + v^2) h'(v) / (1 + h(v)^2), always positive.
    Real slope(Real phase) const;

    /// dPhi/dphi expressed as a function of the output phase Phi.  Used to
    /// integrate slope^2 d(phi) = slope d(Phi) over the image instead of the
    /// (possibly extremely narrow) preimage.
    Real slope_at_image(Real image_phase) const;

    /// Exact integral of slope_at_image over [lo, hi].
    Real slope_at_image_integral(Real lo, Real hi) const;

    Real condition() const { return ratio_; }  ///< s1 / s2 >= 1

private:
    Real out_angle_ = 0;  // rotation applied after the diagonal part
    Real in_angle_ = 0;   // rotation applied before it
    Real ratio_ = 1;      // s1 / s2
    Real pi_ = 0;
};

using CircleLift = BasicCircleLift<double>;

template <class Real>
BasicCircleLift<Real>::BasicCircleLift(Real a, Real b, Real c, Real d)
    : BasicCircleLift(a, b, c, d, a * d - b * c) {}

template <class Real>
BasicCircleLift<Real>::BasicCircleLift(Real a, Real b, Real c, Real d, Real det) {
    using std::abs, std::atan, std::atan2, std::hypot, std::max;
    pi_ = 4 * atan(Real(1));
    const Real m = max(max(abs(a), abs(b)), max(abs(c), abs(d)));
    a /= m; b /= m; c /= m; d /= m;
    det /= m * m;
    if (!(det > 0)) throw std::invalid_argument("CircleLift requires det > 0");
    // action on (cos phi, sin phi): x' = d x + c y, y' = b x + a y
    const Real e = (d + a) / 2;
    const Real f = (d - a) / 2;
    const Real g = (b + c) / 2;
    const Real k = (b - c) / 2;
    const Real q = hypot(e, k);
    const Real r = hypot(f, g);
    const Real s1 = q + r;
    const Real s2 = det / s1;
    const Real a1 = atan2(g, f);
    const Real a2 = atan2(k, e);
    out_angle_ = (a2 + a1) / 2;
    in_angle_ = (a2 - a1) / 2;
    ratio_ = s1 / s2;
}

template <class Real>
Real BasicCircleLift<Real>::operator()(Real phase) const {
    using std::atan, std::round, std::tan;
    const Real beta = phase + in_angle_;
    const Real turns = round(beta / pi_);
    const Real local = beta - turns * pi_;
    return out_angle_ + turns * pi_ + atan(tan(local) / ratio_);
}

template <class Real>
Real BasicCircleLift<Real>::slope(Real phase) const {
    using std::cos, std::sin;
    const Real beta = phase + in_angle_;
    const Real c = cos(beta), s = sin(beta);
    const Real r = 1 / ratio_;
    return r / (c * c + r * r * s * s);
}

template <class Real>
Real BasicCircleLift<Real>::slope_at_image(Real image_phase) const {
    using std::cos, std::sin;
    const Real psi = image_phase - out_angle_;
    const Real c = cos(psi), s = sin(psi);
    return c * c / ratio_ + s * s * ratio_;
}

template <class Real>
Real BasicCircleLift<Real>::slope_at_image_integral(Real lo, Real hi) const {
    using std::sin;
    const Real half = (hi - lo) / 2;
    const Real osc = (sin(2 * (hi - out_angle_)) - sin(2 * (lo - out_angle_))) / 4;
    return (half + osc) / ratio_ + (half - osc) * ratio_;
}

}  // namespace cavity
