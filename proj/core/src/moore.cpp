#include "cavity/moore.hpp"

#include "precise.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace cavity {

namespace {

constexpr std::size_t kIterationCap = 10'000'000;

}  // namespace

AuxiliaryMap::AuxiliaryMap(const CavityModel& model)
    : BasicAuxiliaryMap<double>(model.length(), model.omega(), model.delta1().a(), model.delta1().b(),
                                model.delta1().c(), model.delta1().d()) {}

// ---------------------------------------------------------------------------

MooreEvaluator::MooreEvaluator(CavityModel model)
    : model_(std::move(model)), aux_(model_), precise_(std::make_shared<const PreciseMoore>(model_)) {
    milestones_.push_back(model_.length());
}

MooreEvaluator::MooreEvaluator(const MooreEvaluator& other)
    : model_(other.model_), aux_(other.aux_), precise_(other.precise_) {
    std::shared_lock lock(other.mutex_);
    milestones_ = other.milestones_;
}

void MooreEvaluator::grow_to(double tau) const {
    std::unique_lock lock(mutex_);
    // one period of slack past the requested point
    const double target = tau + model_.period();
    while (milestones_.back() <= target) {
        const double next = aux_.f_inverse(milestones_.back());
        if (!(next > milestones_.back())) {
            throw std::runtime_error("milestones stopped increasing (inadmissible map)");
        }
        if (milestones_.size() >= kIterationCap) throw std::runtime_error("milestone cap exceeded");
        milestones_.push_back(next);
    }
}

void MooreEvaluator::reserve_until(double tau_max) const {
    {
        std::shared_lock lock(mutex_);
        if (milestones_.back() > tau_max) return;
    }
    grow_to(tau_max);
}

double MooreEvaluator::milestone(std::size_t n) const {
    {
        std::shared_lock lock(mutex_);
        if (n < milestones_.size()) return milestones_[n];
    }
    std::unique_lock lock(mutex_);
    while (milestones_.size() <= n) {
        const double next = aux_.f_inverse(milestones_.back());
        if (!(next > milestones_.back())) {
            throw std::runtime_error("milestones stopped increasing (inadmissible map)");
        }
        milestones_.push_back(next);
    }
    return milestones_[n];
}

std::size_t MooreEvaluator::map_index(double tau) const {
    if (tau < model_.length()) return 0;
    reserve_until(tau);
    std::shared_lock lock(mutex_);
    return static_cast<std::size_t>(
        std::upper_bound(milestones_.begin(), milestones_.end(), tau) - milestones_.begin());
}

double MooreEvaluator::moore_eval(double tau) const {
    if (tau < model_.length()) return tau - 2.0 * model_.length();
    return static_cast<double>(precise_->moore(quad(tau)));
}

double MooreEvaluator::moore_residual(double t) const {
    const quad tq = t;
    const quad Lt = precise_trajectory(precise_->constants, tq);
    const quad r = precise_->moore(tq + Lt) - precise_->moore(tq - Lt) - 2 * precise_->constants.length;
    return static_cast<double>(r);
}

double MooreEvaluator::moore_slope(double tau) const {
    const double L = model_.length();
    double x = tau;
    double slope = 1.0;
    std::size_t k = 0;
    while (x >= L) {
        slope *= aux_.f_slope(x);
        x = aux_.f(x);
        if (++k > kIterationCap) throw std::runtime_error("Moore iteration cap exceeded");
    }
    return slope;
}

Homography MooreEvaluator::map_power(std::size_t n) const {
    return power(model_.delta1(), static_cast<long long>(n));
}

double MooreEvaluator::trajectory(double t) const {
    const double L = model_.length();
    if (t < 0.0) return L;
    const double s = model_.swing();
    const double w = model_.omega();
    return L + (std::asin(s * std::cos(w * t)) - std::asin(s)) / w;
}

double MooreEvaluator::wall_velocity(double t) const {
    if (t < 0.0) return 0.0;
    const double s = model_.swing();
    const double w = model_.omega();
    const double c = s * std::cos(w * t);
    const double den = 1.0 - c * c;
    if (!(den > 0.0)) throw std::domain_error("wall velocity undefined at a kink of a luminal model");
    return -s * std::sin(w * t) / std::sqrt(den);
}

std::pair<double, double> MooreEvaluator::trajectory_from_characteristic(double tau) const {
    const double back = aux_.f(tau);
    return {0.5 * (tau + back), 0.5 * (tau - back)};
}

}  // namespace cavity
