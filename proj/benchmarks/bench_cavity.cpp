#include "cavity/catalog.hpp"
#include "cavity/mobius.hpp"
#include "cavity/moore.hpp"
#include "cavity/observables.hpp"
#include "cavity/oracle.hpp"
#include "cavity/stability.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace cavity;

namespace {

constexpr double kPi = std::numbers::pi;

CavityModel model_for(int which) {
    switch (which) {
        case 0: return make_linear_finite(2, kPi / 4);
        case 1: return make_linear_odd(2, 0.3);
        case 2: return make_inversion(1, kPi / 6);
        default: return make_homographic(1, 1.0, 2.0);
    }
}

const char* label(int which) {
    static const char* names[] = {"linear-finite", "linear-odd", "inversion", "homographic"};
    return names[which];
}

}  // namespace

static void BM_MobiusPower(benchmark::State& state) {
    const Homography h(-2.0, -1.0, 1.0, 2.0);
    const long long n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(power(h, n));
}
BENCHMARK(BM_MobiusPower)->RangeMultiplier(8)->Range(1, 1 << 15);

static void BM_MooreEval(benchmark::State& state) {
    const MooreEvaluator ev(model_for(static_cast<int>(state.range(0))));
    const double T = ev.model().period();
    ev.reserve_until(60 * T);
    double tau = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.moore_eval(tau));
        tau += 0.37;
        if (tau > 50 * T) tau = 0.0;
    }
    state.SetLabel(label(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MooreEval)->DenseRange(0, 3);

static void BM_MooreResidual(benchmark::State& state) {
    const MooreEvaluator ev(model_for(static_cast<int>(state.range(0))));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.moore_residual(t));
        t += 0.41;
        if (t > 150.0) t = 0.0;
    }
    state.SetLabel(label(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MooreResidual)->DenseRange(0, 3);

static void BM_EnergyQuadrature(benchmark::State& state) {
    const MooreEvaluator ev(model_for(static_cast<int>(state.range(0))));
    const double t = state.range(1) * ev.model().period();
    for (auto _ : state) benchmark::DoNotOptimize(total_energy_quadrature(ev, t));
    state.SetLabel(label(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnergyQuadrature)->ArgsProduct({{0, 1, 2, 3}, {10, 100}})->Unit(benchmark::kMicrosecond);

static void BM_EnergyClosed(benchmark::State& state) {
    const MooreEvaluator ev(make_linear_odd(2, 0.3));
    const double t = state.range(0) * ev.model().period();
    for (auto _ : state) benchmark::DoNotOptimize(total_energy_closed(ev, t));
}
BENCHMARK(BM_EnergyClosed)->Arg(10)->Arg(100);

static void BM_OracleMoore(benchmark::State& state) {
    const CavityModel m = model_for(static_cast<int>(state.range(0)));
    const TrajectoryHandle traj = TrajectoryHandle::from_model(m);
    const double tau = 20 * m.period();
    for (auto _ : state) benchmark::DoNotOptimize(moore_from_trajectory(traj, tau));
    state.SetLabel(label(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OracleMoore)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

static void BM_PhaseScan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(phase_diagram_scan({1.0, 6.0}, {0.0, 0.99}, n, n));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_PhaseScan)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
