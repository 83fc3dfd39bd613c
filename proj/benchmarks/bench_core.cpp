#include "circal/estimators.hpp"
#include "circal/propensity.hpp"
#include "circal/simulation.hpp"
#include "circal/variance.hpp"

#include <benchmark/benchmark.h>

namespace {

circal::GeneratedData make_sample(int n) {
    circal::ScenarioSpec spec;
    spec.id = 2;
    spec.n = n;
    spec.seed = 7;
    return circal::generate_dataset(spec, 0);
}

void BM_FitLogistic(benchmark::State& state) {
    const auto sample = make_sample(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto fit = circal::fit_logistic(sample.data.design, sample.data.treatment);
        benchmark::DoNotOptimize(fit.eta);
    }
}
BENCHMARK(BM_FitLogistic)->Arg(250)->Arg(1000)->Arg(4000);

void BM_EstimateOmega(benchmark::State& state) {
    const auto sample = make_sample(1000);
    const auto fit = circal::fit_logistic(sample.data.design, sample.data.treatment);
    for (auto _ : state) {
        auto omega =
            circal::estimate_omega(sample.data, fit.fitted, circal::WeightScheme::hajek);
        benchmark::DoNotOptimize(omega.alpha1);
    }
}
BENCHMARK(BM_EstimateOmega);

void BM_SandwichPieces(benchmark::State& state) {
    const auto sample = make_sample(1000);
    const auto fit = circal::fit_logistic(sample.data.design, sample.data.treatment);
    const auto omega =
        circal::estimate_omega(sample.data, fit.fitted, circal::WeightScheme::hajek);
    for (auto _ : state) {
        auto pieces = circal::empirical_pieces(sample.data, fit, omega);
        benchmark::DoNotOptimize(pieces.b22);
    }
}
BENCHMARK(BM_SandwichPieces);

void BM_Replication(benchmark::State& state) {
    circal::ScenarioSpec spec;
    spec.id = 1;
    spec.n = static_cast<int>(state.range(0));
    spec.replications = 1;
    spec.seed = 11;
    for (auto _ : state) {
        auto summary = circal::run_study(spec);
        benchmark::DoNotOptimize(summary.tau_ht.bias);
    }
}
BENCHMARK(BM_Replication)->Arg(250)->Arg(1000);

void BM_WrappedCauchy(benchmark::State& state) {
    circal::Rng rng(123);
    for (auto _ : state) {
        auto angle = circal::sample_wrapped_cauchy(rng, 1.0, 0.5);
        benchmark::DoNotOptimize(angle);
    }
}
BENCHMARK(BM_WrappedCauchy);

} // namespace

BENCHMARK_MAIN();
