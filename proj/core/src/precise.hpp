#pragma once

// Quad-precision mirror of the model constants and of the Moore iteration.

#include "cavity/catalog.hpp"
#include "cavity/moore.hpp"

#include <boost/multiprecision/float128.hpp>

namespace cavity {

using quad = boost::multiprecision::float128;

/// Derived constants recomputed in quad precision from the model parameters,
/// so that the trajectory and the auxiliary function agree to quad accuracy.
struct PreciseConstants {
    quad length;
    quad period;
    quad omega;
    quad swing;
    quad a, b, c, d;  // fundamental map
};

PreciseConstants precise_constants(const CavityModel& model);

quad precise_trajectory(const PreciseConstants& k, quad t);

struct PreciseMoore {
    explicit PreciseMoore(const CavityModel& model);

    PreciseConstants constants;
    BasicAuxiliaryMap<quad> aux;

    quad moore(quad tau) const;
};

}  // namespace cavity
