// Microbenchmarks of the hot kernels: subset tests on bit vectors, the
// constrained column sampler, full matrix construction, COMP decoding, and
// exhaustive disjunctness verification.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "rlgt/bitvec.hpp"
#include "rlgt/construct.hpp"
#include "rlgt/decode.hpp"
#include "rlgt/matrix.hpp"
#include "rlgt/rng.hpp"
#include "rlgt/verify.hpp"

namespace {

using namespace rlgt;

SchemeParams scheme(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t) {
    SchemeParams p;
    p.n = n;
    p.k = k;
    p.d = d;
    p.t = t;
    p.alpha = default_alpha(n, k, t, d);
    p.seed = 1;
    return p;
}

void BM_bitvec_subset(benchmark::State& state) {
    const auto bits = static_cast<std::uint32_t>(state.range(0));
    BitVec a(bits), b(bits);
    Rng rng(7);
    for (std::uint32_t i = 0; i < bits; ++i)
        if (rng.bernoulli(0.3)) {
            b.set(i);
            if (rng.bernoulli(0.5)) a.set(i);
        }
    for (auto _ : state) benchmark::DoNotOptimize(a.is_subset_of(b));
}
BENCHMARK(BM_bitvec_subset)->Arg(128)->Arg(1024)->Arg(8192);

void BM_column_sampler(benchmark::State& state) {
    const auto t = static_cast<std::uint32_t>(state.range(0));
    const std::uint32_t d = 8;
    const std::uint32_t alpha = t / (2 * d + 1) / 2;
    ColumnSampler sampler(t, d);
    Rng rng(3);
    for (auto _ : state) {
        sampler.reset();
        for (std::uint32_t i = 0; i < alpha; ++i) benchmark::DoNotOptimize(sampler.pick(rng));
    }
}
BENCHMARK(BM_column_sampler)->Arg(512)->Arg(4096);

void BM_rand_matrix(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const SchemeParams p = scheme(n, 5, 10, 600);
    for (auto _ : state) benchmark::DoNotOptimize(rand_matrix(p));
}
BENCHMARK(BM_rand_matrix)->Arg(100)->Arg(1000);

void BM_comp_decode(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const SchemeParams p = scheme(n, 5, 10, 600);
    const TestMatrix m = rand_matrix(p);
    const SparseSupport x(n, {1, n / 3, n / 2, n - 2, n - 1});
    const Outcome y = or_outcome(m, x);
    for (auto _ : state) benchmark::DoNotOptimize(comp_decode(m, y));
}
BENCHMARK(BM_comp_decode)->Arg(100)->Arg(1000);

void BM_is_disjunct(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const SchemeParams p = scheme(n, 2, 4, 200);
    const TestMatrix m = rand_matrix(p);
    for (auto _ : state) benchmark::DoNotOptimize(is_k_disjunct(m, 2));
}
BENCHMARK(BM_is_disjunct)->Arg(16)->Arg(48);

void BM_qnagt_check(benchmark::State& state) {
    const QnagtConstruction qc = qnagt_construct(12, 2, 8, 0.4, 0.5, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(qnagt_zero_error_check(qc.matrix, 2, WeightMode::exactly_k));
}
BENCHMARK(BM_qnagt_check);

}  // namespace

BENCHMARK_MAIN();
