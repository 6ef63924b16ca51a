#pragma once

#include "cavity/catalog.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace cavity::testing {

/// Portable uniform draws on top of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    double sign() { return (engine_() & 1) ? 1.0 : -1.0; }

private:
    std::mt19937_64 engine_;
};

/// A constructible catalog model with moderate parameters.
CavityModel random_model(Rng& rng, std::optional<Family> family = std::nullopt);

}  // namespace cavity::testing
