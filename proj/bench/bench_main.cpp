#include <benchmark/benchmark.h>

#include "priceforge/clustering.hpp"
#include "priceforge/kernels.hpp"
#include "priceforge/profile_day.hpp"
#include "priceforge/scheduling.hpp"
#include "priceforge/synth.hpp"

using namespace priceforge;

namespace {

const PriceSeries& year() {
    static const PriceSeries series = synth::generate(synth::synth2023());
    return series;
}

const profile::HistoricalBlocks& blocks() {
    static const profile::HistoricalBlocks b = profile::blocks_from_days(slice_days(year()));
    return b;
}

template <auto Fn>
void kernel_fine(benchmark::State& state) {
    const auto& m = blocks().id;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Fn(m));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * m.values.size()));
}

template <auto Fn>
void deviation(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(Fn(blocks().id, blocks().da));
    }
}

template <auto Fn>
void distances(benchmark::State& state) {
    // 365 x 24 hourly rows as the feature matrix
    const auto& m = blocks().da;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Fn(m));
    }
}

void day_profile_nominal(benchmark::State& state) {
    const auto days = slice_days(year());
    for (auto _ : state) {
        benchmark::DoNotOptimize(profile::build_day_scenario(days, profile::ScalingSpec::nominal()));
    }
}

void daily_lp(benchmark::State& state) {
    const auto setup = static_cast<scheduling::Setup>(state.range(0));
    const auto& s = year();
    const std::span<const double> da(s.da.data(), 24);
    const std::span<const double> id(s.id.data(), 96);
    for (auto _ : state) {
        benchmark::DoNotOptimize(scheduling::schedule(da, id, scheduling::PlantParams{}, setup));
    }
}

void year_schedule(benchmark::State& state) {
    scheduling::ScheduleOptions opt;
    opt.parallel = state.range(0) != 0;
    const auto& s = year();
    for (auto _ : state) {
        benchmark::DoNotOptimize(scheduling::schedule(s.da, s.id, scheduling::PlantParams{}, scheduling::Setup::I, opt));
    }
}

void pam(benchmark::State& state) {
    const auto features = clustering::extract_features(slice_days(year()), clustering::Criterion::B);
    for (auto _ : state) {
        benchmark::DoNotOptimize(clustering::kmedoids(features, static_cast<std::size_t>(state.range(0))));
    }
}

}  // namespace

BENCHMARK(kernel_fine<kernels::serial::column_means>)->Name("column_means/serial");
BENCHMARK(kernel_fine<kernels::parallel::column_means>)->Name("column_means/parallel");
BENCHMARK(kernel_fine<kernels::serial::row_stds>)->Name("row_stds/serial");
BENCHMARK(kernel_fine<kernels::parallel::row_stds>)->Name("row_stds/parallel");
BENCHMARK(deviation<kernels::serial::column_mean_deviation>)->Name("column_mean_deviation/serial");
BENCHMARK(deviation<kernels::parallel::column_mean_deviation>)->Name("column_mean_deviation/parallel");
BENCHMARK(distances<kernels::serial::pairwise_distances>)->Name("pairwise_distances/serial");
BENCHMARK(distances<kernels::parallel::pairwise_distances>)->Name("pairwise_distances/parallel");
BENCHMARK(day_profile_nominal)->Unit(benchmark::kMillisecond);
BENCHMARK(daily_lp)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(year_schedule)->Arg(0)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK(pam)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
