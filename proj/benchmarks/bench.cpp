#include <benchmark/benchmark.h>

#include "subconvex/arith.hpp"
#include "subconvex/charsum.hpp"
#include "subconvex/deltamethod.hpp"
#include "subconvex/ledger.hpp"
#include "subconvex/oscint.hpp"
#include "subconvex/transforms.hpp"

using namespace subconvex;

static void BM_Kloosterman(benchmark::State& st) {
    const arith::i64 c = st.range(0);
    for (auto _ : st) benchmark::DoNotOptimize(arith::kloosterman({3, 5, c}));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Kloosterman)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void BM_CharSumOracle(benchmark::State& st) {
    charsum::CharSumArgs a{3, 2, 4, 5, st.range(0), 1, -1};
    for (auto _ : st) benchmark::DoNotOptimize(charsum::char_sum_C_oracle(a));
}
BENCHMARK(BM_CharSumOracle)->Arg(10)->Arg(20)->Arg(40);

static void BM_CharSumReduced(benchmark::State& st) {
    charsum::CharSumArgs a{3, 2, 4, 5, st.range(0), 1, -1};
    for (auto _ : st) benchmark::DoNotOptimize(charsum::char_sum_C_reduced(a));
}
BENCHMARK(BM_CharSumReduced)->Arg(10)->Arg(20)->Arg(40);

static void BM_FrakCSpectrum(benchmark::State& st) {
    charsum::FrakCArgs a{0, 1, 7, 11, 2, 3, 1, 2, 1, 1};
    std::vector<std::int64_t> ns;
    for (int n = -10; n <= 10; ++n) ns.push_back(n);
    for (auto _ : st) benchmark::DoNotOptimize(charsum::frak_C_spectrum(a, ns));
}
BENCHMARK(BM_FrakCSpectrum);

static void BM_FrakSweepSmall(benchmark::State& st) {
    charsum::SweepConfig cfg;
    cfg.max_modulus = st.range(0);
    cfg.max_r = 2;
    cfg.max_n1 = 2;
    cfg.m_max = 2;
    for (auto _ : st) benchmark::DoNotOptimize(charsum::run_frak_sweep(cfg));
}
BENCHMARK(BM_FrakSweepSmall)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_DeltaExpansionSetup(benchmark::State& st) {
    delta::DeltaConfig cfg;
    cfg.Q = static_cast<double>(st.range(0));
    for (auto _ : st) {
        delta::DeltaExpansion e(cfg);
        benchmark::DoNotOptimize(e(1));
    }
}
BENCHMARK(BM_DeltaExpansionSetup)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_StationaryQuadrature(benchmark::State& st) {
    const double Y = static_cast<double>(st.range(0));
    oscint::PhaseModel h([Y](double x) { return Y * (0.5 * x * x - x); }, [Y](double x) { return Y * (x - 1); },
                         [Y](double) { return Y; }, oscint::PhaseUnit::Radians, Y, 1, 1);
    auto w = oscint::bump(0.5, 1.5);
    for (auto _ : st) benchmark::DoNotOptimize(oscint::integrate_oscillatory(w, h, 1e-10));
}
BENCHMARK(BM_StationaryQuadrature)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_GTransformMellin(benchmark::State& st) {
    transforms::GSpec g;
    g.N = 100;
    g.t = 3;
    g.t_f = 9;
    const double y = 12.0 * 6.0 / (4 * kPi * kPi * g.N);
    for (auto _ : st) benchmark::DoNotOptimize(transforms::G_transform_mellin(y, g, 1));
}
BENCHMARK(BM_GTransformMellin)->Unit(benchmark::kMillisecond);

static void BM_GTransformBessel(benchmark::State& st) {
    transforms::GSpec g;
    g.N = 100;
    g.t = 3;
    g.t_f = 9;
    const double y = 12.0 * 6.0 / (4 * kPi * kPi * g.N);
    for (auto _ : st) benchmark::DoNotOptimize(transforms::G_transform_bessel(y, g, 1));
}
BENCHMARK(BM_GTransformBessel)->Unit(benchmark::kMillisecond);

static void BM_OptimizeK(benchmark::State& st) {
    auto L = ledger::build_ledger();
    for (auto _ : st) benchmark::DoNotOptimize(ledger::optimize_K(L, ledger::Rational(5, 6)));
}
BENCHMARK(BM_OptimizeK)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
