#include "properties.hpp"

#include <gtest/gtest.h>

using namespace cavity::testing;

namespace {

constexpr std::uint64_t kSeed = 20261019;
constexpr int kTrials = 1000;

void expect_clean(const PropertyOutcome& p) {
    EXPECT_TRUE(p.passed()) << p.name << ": " << p.failures << " of " << p.trials << " failed, worst " << p.worst
                            << ", first " << p.first_failure;
}

}  // namespace

TEST(Properties, ChainRule) { expect_clean(check_chain_rule(kTrials, kSeed)); }
TEST(Properties, PowerVsComposition) { expect_clean(check_power_vs_composition(kTrials, kSeed)); }
TEST(Properties, SchwarzianVanishing) { expect_clean(check_schwarzian_vanishing(kTrials, kSeed)); }
TEST(Properties, FPeriodicity) { expect_clean(check_f_periodicity(kTrials, kSeed)); }
TEST(Properties, MilestoneConsistency) { expect_clean(check_milestones(kTrials, kSeed)); }
TEST(Properties, FaultInjectionDetected) { expect_clean(check_fault_injection(kTrials, kSeed)); }

TEST(Properties, OtherSeedsAlsoPass) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        for (const auto& p : run_all_properties(200, seed)) expect_clean(p);
    }
}
