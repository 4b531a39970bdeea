#include <benchmark/benchmark.h>

#include "ctw/laurent/laurent_poly.hpp"
#include "ctw/mutation/mutation.hpp"
#include "support/fixtures.hpp"

using namespace ctw;

namespace {

LaurentPoly dense(Index nvars, int power) {
    LaurentPoly base = LaurentPoly::constant(nvars, Rat(1));
    for (Index i = 0; i < nvars; ++i) base = base + LaurentPoly::variable(nvars, i);
    LaurentPoly p = LaurentPoly::constant(nvars, Rat(1));
    for (int k = 0; k < power; ++k) p = mul_serial(p, base);
    return p;
}

void BM_mul_serial(benchmark::State& st) {
    auto a = dense(4, static_cast<int>(st.range(0))), b = dense(4, static_cast<int>(st.range(0)) + 1);
    for (auto _ : st) benchmark::DoNotOptimize(mul_serial(a, b));
    st.counters["terms"] = static_cast<double>(a.num_terms() * b.num_terms());
}

void BM_mul_parallel(benchmark::State& st) {
    auto a = dense(4, static_cast<int>(st.range(0))), b = dense(4, static_cast<int>(st.range(0)) + 1);
    for (auto _ : st) benchmark::DoNotOptimize(mul_parallel(a, b));
    st.counters["terms"] = static_cast<double>(a.num_terms() * b.num_terms());
}

// rank-4 seed of finite type: A2 x A2 with two frozen vertices
Seed bench_seed() {
    RatMatrix B{{0, 1, 0, 0, 1, 0}, {-1, 0, 0, 0, 0, 1}, {0, 0, 0, 1, -1, 0},
                {0, 0, -1, 0, 0, 1}, {-1, 0, 1, 0, 0, 0}, {0, -1, 0, -1, 0, 0}};
    return Seed::make(B, std::vector<std::int64_t>(6, 1), {4, 5});
}

void BM_find_t1_serial(benchmark::State& st) {
    Seed t = bench_seed();
    for (auto _ : st) benchmark::DoNotOptimize(find_t1_serial(t));
}

void BM_find_t1_parallel(benchmark::State& st) {
    Seed t = bench_seed();
    for (auto _ : st) benchmark::DoNotOptimize(find_t1(t, 12, true));
}

}  // namespace

BENCHMARK(BM_mul_serial)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_mul_parallel)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_find_t1_serial);
BENCHMARK(BM_find_t1_parallel);

BENCHMARK_MAIN();
