#pragma once

// Adaptive Gauss-Kronrod quadrature with forced breakpoints.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavity {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< estimated absolute error
    double l1 = 0.0;     ///< integral of |integrand|
};

/// Integrates g over [a, b] split at the given interior points (points
/// outside (a, b) are ignored).  Throws QuadratureError when the estimated
/// error exceeds max(rel_tol * l1, abs_tol) once 2^max_depth panels are used.
QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           std::vector<double> breakpoints = {}, double rel_tol = 1e-10,
                           double abs_tol = 0.0, unsigned max_depth = 12);

}  // namespace cavity
