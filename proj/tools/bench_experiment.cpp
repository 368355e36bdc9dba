// Serial reference path against the OpenMP run grid on a small experiment.

#include "sms/harness.hpp"

#include <benchmark/benchmark.h>

namespace {

sms::harness::ExperimentConfig grid(std::size_t runs) {
    nlohmann::json doc;
    doc["runs"] = runs;
    doc["gen"] = 200;
    doc["benchmarks"] = {"f1", "f6", "f18"};
    doc["optimizers"] = {"sms", "pso", "de"};
    return sms::harness::parse_config(doc);
}

void BM_GridSerial(benchmark::State& state) {
    const auto cfg = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_experiment(cfg, sms::harness::Execution::serial));
}

void BM_GridParallel(benchmark::State& state) {
    const auto cfg = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_experiment(cfg, sms::harness::Execution::parallel));
}

BENCHMARK(BM_GridSerial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GridParallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
