#include <benchmark/benchmark.h>

#include "ipr/conditions.hpp"
#include "ipr/matrix.hpp"
#include "ipr/search.hpp"
#include "ipr/systems.hpp"

namespace {

void bm_enumerate_images_schur(benchmark::State& state) {
    ipr::Matrix a = ipr::schur_matrix();
    long long n = state.range(0);
    for (auto _ : state) {
        auto en = ipr::enumerate_images(a, n, n);
        benchmark::DoNotOptimize(en.images.data());
    }
}
BENCHMARK(bm_enumerate_images_schur)->Arg(20)->Arg(60)->Arg(120);

void bm_verify_schur_forced(benchmark::State& state) {
    ipr::Matrix a = ipr::schur_matrix();
    for (auto _ : state) {
        auto v = ipr::verify_ipr_finite(a, 5, 2);
        benchmark::DoNotOptimize(v.kind);
    }
}
BENCHMARK(bm_verify_schur_forced);

void bm_verify_vdw_avoidable(benchmark::State& state) {
    ipr::Matrix a = ipr::vdw_matrix(3);
    for (auto _ : state) {
        auto v = ipr::verify_ipr_finite(a, 8, 2);
        benchmark::DoNotOptimize(v.kind);
    }
}
BENCHMARK(bm_verify_vdw_avoidable);

void bm_mt_set(benchmark::State& state) {
    ipr::CoefficientSeq a({1, 2});
    ipr::IntSeq x;
    for (long long i = 1; i <= state.range(0); ++i) x.push_back(i);
    for (auto _ : state) {
        auto s = ipr::mt_set(a, x);
        benchmark::DoNotOptimize(s.data());
    }
}
BENCHMARK(bm_mt_set)->Arg(8)->Arg(12);

void bm_columns_condition(benchmark::State& state) {
    ipr::Matrix a = ipr::Matrix::from_rows({
        {ipr::Rational(1), ipr::Rational(1), ipr::Rational(-1), ipr::Rational(0), ipr::Rational(-1)},
        {ipr::Rational(2), ipr::Rational(-1), ipr::Rational(-1), ipr::Rational(1), ipr::Rational(-1)},
        {ipr::Rational(1), ipr::Rational(0), ipr::Rational(1), ipr::Rational(-2), ipr::Rational(0)},
    });
    for (auto _ : state) {
        auto cert = ipr::columns_condition_check(a);
        benchmark::DoNotOptimize(cert.has_value());
    }
}
BENCHMARK(bm_columns_condition);

}  // namespace

BENCHMARK_MAIN();
