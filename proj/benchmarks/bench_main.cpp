#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hdj/experiment.hpp"
#include "hdj/gaussian_analysis.hpp"
#include "hdj/oracle.hpp"
#include "hdj/quadrature.hpp"

namespace {

hdj::CvState random_state(const hdj::GridPtr& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<hdj::cplx> amps(grid->size());
    for (hdj::cplx& a : amps) {
        a = hdj::cplx{static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                      static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
    }
    return hdj::CvState(grid, std::move(amps)).renormalized();
}

void BM_Fourier(benchmark::State& state) {
    const hdj::GridPtr grid = hdj::make_grid(static_cast<std::size_t>(state.range(0)));
    const hdj::CvState psi = random_state(grid, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hdj::fourier(psi, hdj::FourierDirection::forward));
    }
}
BENCHMARK(BM_Fourier)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_CoherentOracle(benchmark::State& state) {
    const hdj::GridPtr grid = hdj::make_grid(static_cast<std::size_t>(state.range(0)));
    const hdj::CvState cv = random_state(grid, 2);
    const hdj::DualRailState bob =
        hdj::beam_splitter(hdj::make_dualrail(1), std::numbers::pi / 4.0);
    const hdj::HybridState joint = hdj::HybridState::product(cv, hdj::make_dualrail(0), bob);
    const hdj::OracleSpec f = hdj::make_function(hdj::FunctionKind::random_balanced, *grid, 0, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hdj::uncompute_ancilla(hdj::apply_oracle_coherent(joint, f), f));
    }
}
BENCHMARK(BM_CoherentOracle)->Arg(64)->Arg(256)->Arg(1024);

void BM_GammaErrQuadrature(benchmark::State& state) {
    const hdj::GaussianParams params(0.3, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hdj::exact_t_integral(0.5, params, hdj::IntegrandMode::full));
    }
}
BENCHMARK(BM_GammaErrQuadrature);

void BM_IdealPipeline(benchmark::State& state) {
    hdj::ExperimentConfig cfg;
    cfg.mode = hdj::RunMode::ideal_cv;
    cfg.n_points = static_cast<std::size_t>(state.range(0));
    cfg.function = hdj::FunctionKind::random_balanced;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hdj::execute_run(cfg));
    }
}
BENCHMARK(BM_IdealPipeline)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
