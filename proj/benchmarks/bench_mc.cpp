#include <benchmark/benchmark.h>

#include "fhk/mc.hpp"

namespace {

void BM_Philox(benchmark::State& st) {
    std::uint32_t c = 0;
    for (auto _ : st) benchmark::DoNotOptimize(fhk::philox4x32({c++, 0, 0, 0}, {7, 9}));
}
BENCHMARK(BM_Philox);

void BM_SamplePosition(benchmark::State& st) {
    fhk::SamplerConfig c;
    c.alpha = 1.3;
    c.dim = 3;
    c.samples = 100000;
    c.workers = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(fhk::sample_position(c));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(c.samples));
}
BENCHMARK(BM_SamplePosition)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
