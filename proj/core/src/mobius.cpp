#include "cavity/mobius.hpp"

#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cavity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_abs_coefficient(const Homography& h) {
    return std::max({std::abs(h.a()), std::abs(h.b()), std::abs(h.c()), std::abs(h.d())});
}

Homography scaled(double a, double b, double c, double d, double det) {
    const double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    return Homography::with_determinant(a / m, b / m, c / m, d / m, det / m / m);
}


Homography multiply(const Homography& x, const Homography& y) {
    return scaled(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
                  x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d(), x.det() * y.det());
}

Homography power_by_squaring(Homography base, long long n) {
    Homography acc = Homography::identity();
    while (n > 0) {
        if (n & 1) acc = multiply(acc, base);
        base = multiply(base, base);
        n >>= 1;
    }
    return acc;
}

}  // namespace

Homography::Homography(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d), det_(a * d - b * c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
        throw std::invalid_argument("homography coefficients must be finite");
    }
    const double m = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (m == 0.0 || std::abs(det_) <= 1e-300 * m * m) {
        throw std::invalid_argument("homography must be invertible (ad - bc != 0)");
    }
}

Homography Homography::with_determinant(double a, double b, double c, double d, double det) {
    Homography h;
    h.a_ = a;
    h.b_ = b;
    h.c_ = c;
    h.d_ = d;
    h.det_ = det;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d) ||
        !std::isfinite(det) || det == 0.0) {
        throw std::invalid_argument("homography must be finite and invertible");
    }
    return h;
}

Homography Homography::rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, s, -s, c};
}

double Homography::pole() const {
    if (c_ == 0.0) return kInf;
    return -d_ / c_;
}

double Homography::apply(double v) const {
    if (std::isinf(v)) {
        if (c_ == 0.0) return std::copysign(kInf, (a_ / d_) * v);
        return a_ / c_;
    }
    const double num = a_ * v + b_;
    const double den = c_ * v + d_;
    if (den == 0.0) {
        // right-hand limit at the pole
        return std::copysign(kInf, num * c_);
    }
    return num / den;
}

double Homography::derivative_at(double v) const {
    if (std::isinf(v)) return c_ == 0.0 ? det() / (d_ * d_) : 0.0;
    const double den = c_ * v + d_;
    if (den == 0.0) throw std::domain_error("derivative undefined at pole");
    return det() / (den * den);
}

Homography Homography::inverse() const { return scaled(d_, -b_, -c_, a_, det_); }

Homography Homography::normalized() const { return scaled(a_, b_, c_, d_, det_); }

bool Homography::projectively_equal(const Homography& other, double rel_tol) const {
    const std::array<double, 4> x{a_, b_, c_, d_};
    const std::array<double, 4> y{other.a_, other.b_, other.c_, other.d_};
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(x[i]) > std::abs(x[k])) k = i;
    }
    if (std::abs(y[k]) <= rel_tol * max_abs_coefficient(other)) return false;
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(x[i] / x[k] - y[i] / y[k]) > rel_tol) return false;
    }
    return true;
}

Homography compose(const Homography& h1, const Homography& h2) { return multiply(h1, h2); }

double degeneracy_tolerance(const Homography& h) {
    return 1e-12 * (h.trace() * h.trace() + std::abs(h.det()));
}

Homography power(const Homography& h, long long n) {
    if (n < 0) throw std::invalid_argument("power: exponent must be nonnegative");
    if (n == 0) return Homography::identity();
    if (n == 1) return h.normalized();

    const Homography m = h.normalized();
    const double tr = m.trace();
    const double det = m.det();
    const double disc = tr * tr - 4.0 * det;
    const double eps = degeneracy_tolerance(m);
    const double scale = tr * tr + std::abs(det);
    const double nd = static_cast<double>(n);

    if (std::abs(disc) <= eps) {
        // Jordan form: H^n = lambda^(n-1) (lambda I + n (H - lambda I))
        const double lam = 0.5 * tr;
        return scaled(lam + nd * (m.a() - lam), nd * m.b(), nd * m.c(), lam + nd * (m.d() - lam), lam * lam);
    }
    if (std::abs(disc) <= 1e-8 * scale) {
        // eigenvalues too close for the spectral formulas to be accurate
        return power_by_squaring(m, n);
    }
    if (disc > 0.0) {
        const double root = std::sqrt(disc);
        const double big = tr >= 0.0 ? 0.5 * (tr + root) : 0.5 * (tr - root);
        const double small = det / big;
        // H^n / big^n = (H - small I) - (small/big)^n (H - big I), up to 1/(big - small)
        const double q = std::pow(small / big, nd);
        return scaled(m.a() - small - q * (m.a() - big), m.b() * (1.0 - q), m.c() * (1.0 - q),
                      m.d() - small - q * (m.d() - big), q * (big - small) * (big - small));
    }
    // elliptic: lambda = r e^{+-i psi},  H^n ~ sin(n psi) H - r sin((n-1) psi) I
    const double r = std::sqrt(det);
    const double psi = std::atan2(std::sqrt(-disc), tr);
    const double sn = std::sin(nd * psi);
    const double sn1 = r * std::sin((nd - 1.0) * psi);
    const double a = sn * m.a() - sn1;
    const double b = sn * m.b();
    const double c = sn * m.c();
    const double d = sn * m.d() - sn1;
    if (std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}) <= 1e-300) {
        return power_by_squaring(m, n);
    }
    return scaled(a, b, c, d, det * std::sin(psi) * std::sin(psi));
}

const char* to_string(MapKind kind) {
    switch (kind) {
        case MapKind::elliptic: return "elliptic";
        case MapKind::parabolic: return "parabolic";
        case MapKind::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

MapClass classify(const Homography& h) {
    MapClass out;
    const double tr = h.trace();
    out.discriminant = tr * tr - 4.0 * h.det();
    const double eps = degeneracy_tolerance(h);
    if (std::abs(out.discriminant) <= eps) {
        out.kind = MapKind::parabolic;
        out.lambda1 = out.lambda2 = 0.5 * tr;
    } else if (out.discriminant > 0.0) {
        out.kind = MapKind::hyperbolic;
        const double root = std::sqrt(out.discriminant);
        out.lambda1 = 0.5 * (tr + root);
        out.lambda2 = 0.5 * (tr - root);
    } else {
        out.kind = MapKind::elliptic;
        const double root = std::sqrt(-out.discriminant);
        out.lambda1 = {0.5 * tr, 0.5 * root};
        out.lambda2 = {0.5 * tr, -0.5 * root};
    }
    return out;
}

namespace {

// Central differences for g', g'' and g''' with two Richardson levels on h,
// h/2, h/4.  `floor` bounds |g'| from below relative to |g|.
template <class Real, class G>
Real schwarzian_fd(const G& g, Real v, Real h, Real floor) {
    using std::abs;
    const Real g0 = g(v);
    struct Derivs { Real d1, d2, d3; };
    auto central = [&](Real k) {
        const Real p1 = g(v + k), m1 = g(v - k), p2 = g(v + 2 * k), m2 = g(v - 2 * k);
        return Derivs{(p1 - m1) / (2 * k), (p1 - 2 * g0 + m1) / (k * k), (p2 - 2 * p1 + 2 * m1 - m2) / (2 * k * k * k)};
    };
    const Derivs c0 = central(h), c1 = central(h / 2), c2 = central(h / 4);
    auto extrapolate = [](Real x, Real y, Real z) {
        const Real xy = (4 * y - x) / 3, yz = (4 * z - y) / 3;
        return (16 * yz - xy) / 15;
    };
    const Real d1 = extrapolate(c0.d1, c1.d1, c2.d1);
    const Real d2 = extrapolate(c0.d2, c1.d2, c2.d2);
    const Real d3 = extrapolate(c0.d3, c1.d3, c2.d3);
    if (!(abs(d1) > floor * std::max(Real(1), abs(g0)))) {
        throw std::domain_error("Schwarzian undefined: vanishing first derivative");
    }
    const Real ratio = d2 / d1;
    return d3 / d1 - Real(1.5) * ratio * ratio;
}

}  // namespace

double schwarzian_at(const std::function<double(double)>& g, double v, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("schwarzian_at: step must be positive");
    return schwarzian_fd<double>(g, v, step * std::max(1.0, std::abs(v)), 1e-12);
}

double schwarzian_at(const Homography& h, double v, double step) {
    using quad = boost::multiprecision::float128;
    if (!(step > 0.0)) throw std::invalid_argument("schwarzian_at: step must be positive");
    const quad a = h.a(), b = h.b(), c = h.c(), d = h.d();
    auto g = [&](quad x) { return (a * x + b) / (c * x + d); };
    return static_cast<double>(schwarzian_fd<quad>(g, quad(v), quad(step * std::max(1.0, std::abs(v))), quad(1e-28)));
}

}  // namespace cavity
