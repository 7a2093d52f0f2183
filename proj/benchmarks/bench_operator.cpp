#include <cmath>

#include <benchmark/benchmark.h>

#include "fhk/operator.hpp"
#include "fhk/solve.hpp"

namespace {

fhk::Field bump(const fhk::Grid& g) {
    return fhk::Field::sample(g, [](const fhk::Point& x) { return std::exp(-4.0 * (1.0 - std::cos(x[0]))); });
}

fhk::KernelParams params(double alpha) {
    fhk::KernelParams p;
    p.alpha = alpha;
    return p;
}

void BM_ApplySpectral(benchmark::State& st) {
    const fhk::Grid g = fhk::Grid::torus(1, static_cast<int>(st.range(0)));
    const fhk::OperatorHandle G = fhk::OperatorHandle::spectral(1.5, g);
    const fhk::Field f = bump(g);
    for (auto _ : st) benchmark::DoNotOptimize(G.apply(f));
}
BENCHMARK(BM_ApplySpectral)->RangeMultiplier(4)->Range(64, 4096);

void BM_ApplySingular(benchmark::State& st) {
    const fhk::Grid g = fhk::Grid::torus(1, static_cast<int>(st.range(0)));
    const fhk::OperatorHandle G = fhk::OperatorHandle::singular(params(1.5), g);
    const fhk::Field f = bump(g);
    for (auto _ : st) benchmark::DoNotOptimize(G.apply(f));
}
BENCHMARK(BM_ApplySingular)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_EvolveMol(benchmark::State& st) {
    const fhk::Grid g = fhk::Grid::torus(1, static_cast<int>(st.range(0)));
    const fhk::OperatorHandle G = fhk::OperatorHandle::singular(params(1.0), g);
    fhk::EvolveSpec mol;
    mol.method = fhk::EvolveMethod::MolExplicit;
    const fhk::Field u0 = bump(g);
    for (auto _ : st) benchmark::DoNotOptimize(fhk::evolve_mild(u0, 0.1, G, mol));
}
BENCHMARK(BM_EvolveMol)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
