#include <benchmark/benchmark.h>

#include "hcp/hamilton.hpp"
#include "hcp/oracle.hpp"
#include "hcp/randgen.hpp"
#include "hcp/structure.hpp"

using namespace hcp;

static GenSpec t1_spec(int n, std::uint64_t seed) {
    return GenSpec::theorem1(n, ColorWeights::uniform(2), 6, seed);
}

static void BM_generate(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::uint64_t seed = 0;
    for (auto _ : st) {
        auto g = gen_colored_gnp(t1_spec(n, seed++));
        benchmark::DoNotOptimize(g.edge_count());
    }
    st.SetComplexityN(n);
}
BENCHMARK(BM_generate)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_solve_theorem1(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    auto g = gen_colored_gnp(t1_spec(n, 1));
    ProfileVector m{n / 3, n - n / 3};
    std::uint64_t seed = 0;
    for (auto _ : st) {
        SolverConfig cfg;
        cfg.seed = seed++;
        auto r = solve(g, m, ColorWeights::uniform(2), cfg);
        benchmark::DoNotOptimize(r.status);
    }
}
BENCHMARK(BM_solve_theorem1)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_solve_theorem2(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    ColorWeights a({0.7, 0.3});
    auto g = gen_colored_gnp(GenSpec::theorem2(n, a, 6, 2));
    ProfileVector m{n / 20, n - n / 20};
    std::uint64_t seed = 0;
    for (auto _ : st) {
        SolverConfig cfg;
        cfg.seed = seed++;
        auto r = solve(g, m, a, cfg);
        benchmark::DoNotOptimize(r.status);
    }
}
BENCHMARK(BM_solve_theorem2)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_exact_hcp(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    GenSpec s;
    s.n = n;
    s.p = 0.8;
    s.alpha = ColorWeights::uniform(2);
    s.seed = 3;
    auto g = gen_colored_gnp(s);
    for (auto _ : st) benchmark::DoNotOptimize(exact_hcp(g).size());
}
BENCHMARK(BM_exact_hcp)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);

static void BM_danger_sets(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    auto g = gen_colored_gnp(t1_spec(n, 4));
    ProfileVector m{n / 2, n - n / 2};
    auto scheme = partition_for_profile(n, m);
    for (auto _ : st) {
        auto d = compute_danger_sets(g, scheme, m, ColorWeights::uniform(2), 0.1, DangerVariant::theorem1);
        benchmark::DoNotOptimize(d.A_m.size());
    }
}
BENCHMARK(BM_danger_sets)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_density_check(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    auto g = gen_colored_gnp(t1_spec(n, 5));
    double c = density_constant(g);
    for (auto _ : st) benchmark::DoNotOptimize(check_density(g, 1, c).pass);
}
BENCHMARK(BM_density_check)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
