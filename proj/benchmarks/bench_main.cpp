#include <benchmark/benchmark.h>

#include <cmath>

#include "solitonlab/analysis.hpp"
#include "solitonlab/hopf.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/speed.hpp"

using namespace solitonlab;

namespace {

const SpeedFunction kMean = SpeedFunction::mean_curvature(1.0);
const SpeedFunction kHarm = SpeedFunction::harmonic_mean_power_mn(2, 3, 1.0);

void BM_eval_mean(benchmark::State& state) {
    EvalPoint p(1.7, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(eval(kMean, p));
}
BENCHMARK(BM_eval_mean);

void BM_eval_harmonic_root(benchmark::State& state) {
    EvalPoint p(1.7, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(eval(kHarm, p));
}
BENCHMARK(BM_eval_harmonic_root);

void BM_grad_harmonic_root(benchmark::State& state) {
    EvalPoint p(1.7, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(grad(kHarm, p));
}
BENCHMARK(BM_grad_harmonic_root);

void BM_solve_gamma_pp(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_gamma_pp(kHarm, 1.0, 0.7, 1.1, -0.4, 0.0));
}
BENCHMARK(BM_solve_gamma_pp);

void BM_integrate_sphere_profile(benchmark::State& state) {
    SolitonProblem p;
    p.speed = kMean;
    p.b = std::sqrt(2.0);
    p.x_max = 0.9 * std::sqrt(2.0);
    p.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) {
        SolveReport rep = integrate_profile(p);
        benchmark::DoNotOptimize(rep.residual_max);
    }
}
BENCHMARK(BM_integrate_sphere_profile)->Arg(6)->Arg(9)->Arg(12);

void BM_ellipsoid_identities(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        HopfPatch patch = ellipsoid_patch(1.2, 0.7, -0.3, 0.5, n);
        benchmark::DoNotOptimize(verify_modulus_identity(patch));
        benchmark::DoNotOptimize(verify_structure_equations(patch));
    }
}
BENCHMARK(BM_ellipsoid_identities)->Arg(201)->Arg(801);

void BM_parabolicity_scan(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ScanGrid g;
    g.H0 = 0.1;
    g.H1 = 2.0;
    g.nH = n;
    g.K0 = -4.0;
    g.K1 = 1.0;
    g.nK = n;
    auto speed = SpeedFunction::quadratic_hk(1.0, 1.0, 1.0);
    for (auto _ : state) {
        ScanResult sr = parabolicity_scan(speed, g);
        benchmark::DoNotOptimize(sr.cells.size());
    }
}
BENCHMARK(BM_parabolicity_scan)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
