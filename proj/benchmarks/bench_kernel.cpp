#include <benchmark/benchmark.h>

#include "fhk/kernel.hpp"

namespace {

fhk::KernelQuery query(double alpha, int d, double t, double r, int k = 0) {
    fhk::KernelQuery q;
    q.params.alpha = alpha;
    q.params.dim = d;
    q.t = t;
    q.r = r;
    q.k = k;
    return q;
}

void BM_KernelFourier(benchmark::State& st) {
    const double alpha = st.range(0) / 10.0;
    const int d = static_cast<int>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(fhk::eval_kernel(query(alpha, d, 1.0, 1.3)));
}
BENCHMARK(BM_KernelFourier)->ArgsProduct({{5, 10, 15}, {1, 2, 3}});

void BM_KernelSubordination(benchmark::State& st) {
    const double alpha = st.range(0) / 10.0;
    for (auto _ : st) benchmark::DoNotOptimize(fhk::eval_kernel_subordination(query(alpha, 3, 1.0, 1.3)));
}
BENCHMARK(BM_KernelSubordination)->Arg(5)->Arg(15);

// Double precision below k = 12, extended precision from there on.
void BM_ContourTimeZero(benchmark::State& st) {
    const int k = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(fhk::eval_kernel_contour(query(1.5, 1, 0.0, 1.0, k)));
}
BENCHMARK(BM_ContourTimeZero)->Arg(1)->Arg(4)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
