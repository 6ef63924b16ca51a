#pragma once

// Randomized invariants shared by the property tests and the acceptance run.

#include "cavity/catalog.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cavity::testing {

struct PropertyOutcome {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst = 0.0;  ///< largest normalized deviation seen
    std::string first_failure;
    bool passed() const { return trials > 0 && failures == 0; }
};

PropertyOutcome check_chain_rule(int trials, std::uint64_t seed);
PropertyOutcome check_power_vs_composition(int trials, std::uint64_t seed);
PropertyOutcome check_schwarzian_vanishing(int trials, std::uint64_t seed);
PropertyOutcome check_f_periodicity(int trials, std::uint64_t seed);
PropertyOutcome check_milestones(int trials, std::uint64_t seed);
PropertyOutcome check_fault_injection(int trials, std::uint64_t seed);

std::vector<PropertyOutcome> run_all_properties(int trials, std::uint64_t seed);

/// Milestones from the family closed forms, independent of f^{-1} iteration.
double closed_milestone(const CavityModel& model, int n);

}  // namespace cavity::testing
