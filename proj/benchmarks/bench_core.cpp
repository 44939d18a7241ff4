#include <cstddef>
#include <random>

#include <benchmark/benchmark.h>

#include "sinklab/enumerate.hpp"
#include "sinklab/family.hpp"
#include "sinklab/linalg.hpp"
#include "sinklab/matrix.hpp"
#include "sinklab/sinkhorn.hpp"

using namespace sinklab;

namespace {

Matrix<double> random_float(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    Matrix<double> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
    return a;
}

Matrix<Rational> random_rational(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix<Rational> a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = Rational(static_cast<long>(rng() % 19) - 9,
                               static_cast<long>(rng() % 9) + 1);
    return a;
}

void BM_FloatScaling(benchmark::State& state) {
    const Matrix<double> a = random_float(static_cast<std::size_t>(state.range(0)), 99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sinkhorn_iterate(a, 10000, 1e-10));
    }
}
BENCHMARK(BM_FloatScaling)->Arg(5)->Arg(10)->Arg(20);

void BM_ExactScalingCapped(benchmark::State& state) {
    const Matrix<Rational> a{{Rational(1), Rational(2), Rational(3)},
                             {Rational(4), Rational(5), Rational(6)},
                             {Rational(7), Rational(8), Rational(10)}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(sinkhorn_iterate(a, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_ExactScalingCapped)->Arg(4)->Arg(8)->Arg(12);

void BM_ExactDeterminant(benchmark::State& state) {
    const Matrix<Rational> a = random_rational(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(determinant(a));
    }
}
BENCHMARK(BM_ExactDeterminant)->Arg(4)->Arg(6)->Arg(8);

void BM_EnumerationDecode(benchmark::State& state) {
    const RowStochasticEnumeration e(3, 8);
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.matrix_at(i));
        i = (i + 9973) % e.total();
    }
}
BENCHMARK(BM_EnumerationDecode);

void BM_FamilyBuildVerify(benchmark::State& state) {
    const FamilyParams p = validate_params(2, 3, 7, Rational(1, 4), Rational(1, 8));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_one_step(p));
    }
}
BENCHMARK(BM_FamilyBuildVerify);

} // namespace

BENCHMARK_MAIN();
