#include "cavity/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace cavity {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panel {
    double a, b, value, error, l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const std::function<double(double)>& g, double a, double b) {
    Panel p{a, b, 0.0, 0.0, 0.0};
    // max_depth 0: one Kronrod panel with its Gauss error estimate
    p.value = Rule::integrate(g, a, b, 0, 0.0, &p.error, &p.l1);
    return p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           std::vector<double> breakpoints, double rel_tol, double abs_tol,
                           unsigned max_depth) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be positive");
    QuadratureResult out;
    if (a == b) return out;
    const double sign = b > a ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    std::vector<double> edges{lo};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double p : breakpoints) {
        if (p > lo && p < hi && p > edges.back()) edges.push_back(p);
    }
    edges.push_back(hi);

    // global adaptive bisection: always split the panel with the largest error
    std::priority_queue<Panel> queue;
    double value = 0.0, error = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = evaluate(g, edges[i], edges[i + 1]);
        value += p.value;
        error += p.error;
        l1 += p.l1;
        queue.push(p);
    }
    const std::size_t max_panels = edges.size() + (std::size_t{1} << std::min(max_depth, 16u));
    auto done = [&] { return error <= std::max(rel_tol * l1, abs_tol); };
    while (!done() && queue.size() < max_panels) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        queue.pop();
        const Panel left = evaluate(g, worst.a, mid);
        const Panel right = evaluate(g, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
    }
    if (!done() || !std::isfinite(value)) {
        std::ostringstream os;
        os << "quadrature budget exhausted: estimate " << sign * value << ", error bound " << error;
        throw QuadratureError(os.str(), sign * value, error);
    }
    out.value = sign * value;
    out.error = error;
    out.l1 = l1;
    return out;
}

}  // namespace cavity
