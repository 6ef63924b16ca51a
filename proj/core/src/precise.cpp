#include "precise.hpp"

#include <stdexcept>

namespace cavity {

namespace {

constexpr long kIterationCap = 10'000'000;

}  // namespace

PreciseConstants precise_constants(const CavityModel& model) {
    using boost::multiprecision::atan;
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    using boost::multiprecision::tan;
    const quad pi = 4 * atan(quad(1));
    PreciseConstants k;
    k.period = model.period();
    k.omega = 2 * pi / k.period;
    const quad theta = model.theta();
    switch (model.family()) {
        case Family::static_cavity: {
            k.length = model.length();
            k.swing = 0;
            const quad angle = -k.omega * k.length;
            k.a = cos(angle); k.b = sin(angle); k.c = -sin(angle); k.d = cos(angle);
            break;
        }
        case Family::linear_finite:
            k.length = (model.order() + theta / pi) * k.period;
            k.swing = sin(theta);
            k.a = 1; k.b = -2 * tan(theta); k.c = 0; k.d = 1;
            break;
        case Family::linear_odd:
            k.length = (quad(model.order()) - quad(0.5)) * k.period;
            k.swing = -sin(theta);
            k.a = 1; k.b = -2 * tan(theta); k.c = 0; k.d = 1;
            break;
        case Family::inversion: {
            k.length = (model.order() + theta / pi) * k.period;
            const quad v0 = tan(theta);
            k.swing = (theta > 0 ? -1 : 1) * cos(2 * theta);
            k.a = 0; k.b = -v0 * v0; k.c = 1; k.d = 0;
            break;
        }
        case Family::homographic: {
            const quad v0 = *model.v0();
            const quad v1 = model.v1();
            k.length = (model.order() + atan(v0) / pi) * k.period;
            const quad th = atan((1 + v0 * v0) / (2 * v1) - v0);
            const quad phase = k.omega * k.length + th;
            k.swing = cos(phase) >= 0 ? sin(phase) : -sin(phase);
            k.a = -v1; k.b = -v0 * (v0 - 2 * v1); k.c = 1; k.d = -v1;
            break;
        }
    }
    if (model.map_overridden()) {
        const Homography& h = model.delta1();
        k.a = h.a(); k.b = h.b(); k.c = h.c(); k.d = h.d();
    }
    return k;
}

quad precise_trajectory(const PreciseConstants& k, quad t) {
    using boost::multiprecision::asin;
    using boost::multiprecision::cos;
    if (t < 0) return k.length;
    return k.length + (asin(k.swing * cos(k.omega * t)) - asin(k.swing)) / k.omega;
}

PreciseMoore::PreciseMoore(const CavityModel& model)
    : constants(precise_constants(model)),
      aux(constants.length, constants.omega, constants.a, constants.b, constants.c, constants.d) {}

quad PreciseMoore::moore(quad tau) const {
    const quad L = constants.length;
    quad x = tau;
    long k = 0;
    while (x >= L) {
        x = aux.f(x);
        if (++k > kIterationCap) throw std::runtime_error("Moore iteration cap exceeded");
    }
    return x - 2 * L + 2 * L * k;
}

}  // namespace cavity
