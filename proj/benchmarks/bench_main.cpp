#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "fibcm/cm_calculus.hpp"
#include "fibcm/fibration_lab.hpp"
#include "fibcm/ma_solver.hpp"
#include "fibcm/spectral.hpp"
#include "fibcm/tau_expr.hpp"

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

fibcm::TorusField trig_field(const fibcm::TorusGrid& g, double amp) {
    fibcm::TorusField u(g);
    for (int r = 0; r < g.N; ++r)
        for (int c = 0; c < g.N; ++c)
            u.at(r, c) = amp * std::cos(kTau * c * g.h) * std::cos(kTau * r * g.h);
    return u;
}

void BM_ChExpand(benchmark::State& state) {
    const fibcm::FibrationData d = make_fibration_data(
        static_cast<int>(state.range(0)), fibcm::Rational(7, 3), fibcm::Rational(-95, 7),
        fibcm::Rational(83, 9), fibcm::Rational(-41, 11));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fibcm::ch_expand(d));
    }
}
BENCHMARK(BM_ChExpand)->Arg(1)->Arg(2)->Arg(3);

void BM_PoissonSolve(benchmark::State& state) {
    const fibcm::TorusGrid g = fibcm::make_grid(static_cast<int>(state.range(0)));
    const fibcm::TorusField rhs = fibcm::laplacian(trig_field(g, 0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fibcm::poisson_solve(rhs));
    }
}
BENCHMARK(BM_PoissonSolve)->Arg(64)->Arg(128)->Arg(256);

void BM_MaSolve(benchmark::State& state) {
    const fibcm::TorusGrid g = fibcm::make_grid(static_cast<int>(state.range(0)));
    const fibcm::TorusField f = trig_field(g, 0.3);
    fibcm::SolveConfig cfg;
    cfg.lambda = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fibcm::solve_ma(f, cfg));
    }
}
BENCHMARK(BM_MaSolve)->Arg(64)->Arg(128);

void BM_WeilPetersson(benchmark::State& state) {
    const fibcm::TauExpr tau = fibcm::parse_tau("i + 0.05*b");
    const fibcm::TorusGrid g = fibcm::make_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const fibcm::TauFamily fam = fibcm::make_tau_family(tau, g, 8);
        benchmark::DoNotOptimize(fibcm::weil_petersson_form(fam));
    }
}
BENCHMARK(BM_WeilPetersson)->Arg(64)->Arg(128);

void BM_FibreAverage(benchmark::State& state) {
    const fibcm::TauFamily fam = fibcm::make_tau_family(fibcm::parse_tau("i + 0.05*b"),
                                                        fibcm::make_grid(64),
                                                        static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fibcm::fibre_average_a(fam));
    }
}
BENCHMARK(BM_FibreAverage)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
