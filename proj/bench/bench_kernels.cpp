#include "hornlab/octahedron_locus.hpp"

#include <benchmark/benchmark.h>

using namespace hornlab;

namespace {

std::vector<TropWeighting> triple(int n) {
    Rng rng(100 + n);
    std::vector<TropWeighting> ws;
    for (int f = 0; f < 3; ++f) ws.push_back(random_weighting(standard_network_ptr(n), rng, -9, 9));
    return ws;
}

// m-map over all α of Δ³(n): OpenMP kernel against its serial reference.
void BM_m_map(benchmark::State& st) {
    auto ws = triple(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(m_map(ws));
}
void BM_m_map_serial(benchmark::State& st) {
    auto ws = triple(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(m_map_serial(ws));
}
BENCHMARK(BM_m_map)->DenseRange(2, 4);
BENCHMARK(BM_m_map_serial)->DenseRange(2, 4);

void BM_corner_minor_map(benchmark::State& st) {
    Rng rng(7);
    auto gs = random_generic_tuple(static_cast<int>(st.range(0)), 3, rng);
    for (auto _ : st) benchmark::DoNotOptimize(corner_minor_map(gs));
}
BENCHMARK(BM_corner_minor_map)->DenseRange(2, 4);

void BM_singular_values(benchmark::State& st) {
    Rng rng(8);
    const int n = static_cast<int>(st.range(0));
    std::vector<double> lam;
    for (int i = 0; i < n; ++i) lam.push_back(n - 2.0 * i);
    ComplexMatrix a = sample_with_singular_values(lam, 3, rng);
    for (auto _ : st) benchmark::DoNotOptimize(singular_values(a));
}
BENCHMARK(BM_singular_values)->DenseRange(2, 5);

void BM_locus_distance(benchmark::State& st) {
    std::vector<double> h{2, 4, 1, 2, 2, 0, 3, 5, 3, 2, 4, 5};
    LocusOptions opt;
    opt.search = st.range(0) != 0;
    opt.exact = !opt.search;
    for (auto _ : st) benchmark::DoNotOptimize(distance_to_octahedron_locus(h, opt));
}
BENCHMARK(BM_locus_distance)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
