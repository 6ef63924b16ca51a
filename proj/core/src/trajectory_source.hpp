#pragma once

#include "precise.hpp"

namespace cavity {

class TrajectorySource {
public:
    virtual ~TrajectorySource() = default;

    virtual double at(double t) const = 0;
    virtual quad at_quad(quad t) const { return at(static_cast<double>(t)); }

    double length = 0.0;
    double period = 0.0;
    double vmax = 0.0;
    double min_length = 0.0;
    double max_length = 0.0;
};

}  // namespace cavity
