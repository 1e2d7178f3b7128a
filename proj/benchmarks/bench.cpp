#include <benchmark/benchmark.h>

#include <memory>

#include "weierkit/elliptic.hpp"
#include "weierkit/genus2.hpp"
#include "weierkit/genusg.hpp"
#include "weierkit/reduction.hpp"

using namespace weierkit;

namespace {

const Complex tau{0.1, 1.2};

void BM_EisensteinE(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(eisenstein_E(k, tau));
}
BENCHMARK(BM_EisensteinE)->Arg(2)->Arg(8)->Arg(24);

void BM_WeierstrassP(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const Complex w{0.23, 0.41};
    for (auto _ : state)
        benchmark::DoNotOptimize(weierstrass_P(m, w, tau));
}
BENCHMARK(BM_WeierstrassP)->Arg(1)->Arg(4)->Arg(8);

void BM_WeierstrassPShifted(benchmark::State& state)
{
    const Complex w{3.23, 2.9};
    for (auto _ : state)
        benchmark::DoNotOptimize(weierstrass_P(2, w, tau));
}
BENCHMARK(BM_WeierstrassPShifted);

void BM_TwistedP(benchmark::State& state)
{
    const TwistData twist = TwistData::from_angles(0.2, 0.3);
    const Complex w{0.23, 0.41};
    for (auto _ : state)
        benchmark::DoNotOptimize(twisted_P(2, twist, w, tau));
}
BENCHMARK(BM_TwistedP);

SewingData sewing(int N)
{
    SewingData s;
    s.tau1 = {0.1, 1.0};
    s.tau2 = {-0.2, 1.3};
    s.epsilon = {0.01, 0.0};
    s.p = 2;
    s.N = N;
    return s;
}

void BM_Genus2Context(benchmark::State& state)
{
    const SewingData s = sewing(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(Genus2Context(s));
}
BENCHMARK(BM_Genus2Context)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Genus2Weierstrass(benchmark::State& state)
{
    const Genus2Context ctx(sewing(16));
    const Genus2Point x{{0.2, 0.1}, 1}, y{{-0.15, 0.05}, 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(ctx.weierstrass(1, x, y));
}
BENCHMARK(BM_Genus2Weierstrass)->Unit(benchmark::kMicrosecond);

void BM_SchottkyPsi(benchmark::State& state)
{
    SchottkyData d;
    d.g = 2;
    d.w_minus = {-1.0, {0.0, -1.5}};
    d.w_plus = {{1.2, 0.1}, {0.2, 1.4}};
    d.rho = {1e-3, 1e-3};
    d.p = 1;
    d.N = static_cast<int>(state.range(0));
    d.f = {LaurentPolynomial{{{-1, 0.3}}}};
    const SchottkyContext ctx(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(ctx.psi({0.3, 0.2}, {-0.2, 0.4}));
}
BENCHMARK(BM_SchottkyPsi)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_ApplyDelta(benchmark::State& state)
{
    const EllipticSystem sys(tau);
    const FunctionFamily fam(Kind::elliptic, [](std::span<const Complex>, const ModeLabel& l) {
        return l.empty() ? Complex(1.0) : Complex(1.0 / (1.0 + l.back().m));
    }, 6);
    const std::vector<Complex> pts = {{0.1, 0.3}, {0.45, 0.7}, {0.8, 1.1}};
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_delta(2, fam, sys, pts));
}
BENCHMARK(BM_ApplyDelta)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
