#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "vcsplp/blp.hpp"
#include "vcsplp/lift.hpp"
#include "vcsplp/stp.hpp"

namespace {

using namespace vcsp;

CostFunction table_function(int d, int arity, std::vector<long> values) {
    std::vector<Rational> table;
    table.reserve(values.size());
    for (long v : values) table.push_back(make_rational(v));
    return CostFunction(d, arity, std::move(table));
}

Language cut_language() {
    Language lang;
    lang.domain = {2};
    lang.add("cut", table_function(2, 2, {0, 1, 1, 0}));
    return lang;
}

Language cut_with_unaries() {
    Language lang = cut_language();
    lang.add("u00", table_function(2, 1, {0, 0}));
    lang.add("u01", table_function(2, 1, {0, 1}));
    lang.add("u10", table_function(2, 1, {1, 0}));
    lang.add("u11", table_function(2, 1, {1, 1}));
    return lang;
}

Operation boolean_threshold(int m, int t) {
    return operation_from(2, m, [t](const Labeling& args) {
        int total = 0;
        for (int a : args) total += a;
        return total >= t ? 1 : 0;
    });
}

FractionalPolymorphism min_max_seed() {
    return make_fpoly(2, 1,
                      {{Mapping{{boolean_threshold(2, 2)}}, make_rational(1, 2)},
                       {Mapping{{boolean_threshold(2, 1)}}, make_rational(1, 2)}});
}

FractionalPolymorphism thresholds(int m) {
    std::vector<std::pair<Mapping, Rational>> support;
    for (int t = 1; t <= m; ++t)
        support.push_back({Mapping{{boolean_threshold(m, t)}},
                           make_rational(1, static_cast<long>(m))});
    return make_fpoly(m, 1, std::move(support));
}

Language separable_d3() {
    Language lang;
    lang.domain = {3};
    lang.add("f", table_function(3, 2, {0, 2, 1, 1, 3, 2, 3, 5, 4}));
    lang.add("u", table_function(3, 1, {0, 7, 2}));
    return lang;
}

MultimorphismPair cyclic_pair_d3() {
    return {Operation(3, 2, {0, 0, 2, 0, 1, 1, 2, 1, 2}),
            Operation(3, 2, {0, 1, 0, 1, 1, 2, 0, 2, 2})};
}

void BM_SimplexSolve(benchmark::State& state) {
    const Language lang = cut_with_unaries();
    const Instance inst = random_instance(lang, 5, 8, 99);
    const auto relax = build_blp(lang, inst);
    for (auto _ : state) benchmark::DoNotOptimize(solve(relax.lp));
}
BENCHMARK(BM_SimplexSolve);

void BM_BlpSolve(benchmark::State& state) {
    const Language lang = cut_with_unaries();
    const Instance inst =
        random_instance(lang, static_cast<int>(state.range(0)), 8, 99);
    for (auto _ : state) benchmark::DoNotOptimize(solve_blp(lang, inst));
}
BENCHMARK(BM_BlpSolve)->Arg(3)->Arg(5)->Arg(7);

void BM_Admits(benchmark::State& state) {
    const Language lang = cut_language();
    const auto omega = thresholds(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(admits(lang, omega));
}
BENCHMARK(BM_Admits)->Arg(3)->Arg(5);

void BM_GenerateGraph(benchmark::State& state) {
    const auto omega = thresholds(static_cast<int>(state.range(0)));
    const int m = static_cast<int>(state.range(0)) + 1;
    for (auto _ : state) benchmark::DoNotOptimize(generate_V(omega, m));
}
BENCHMARK(BM_GenerateGraph)->Arg(2)->Arg(3);

void BM_LiftOnce(benchmark::State& state) {
    const Language lang = cut_language();
    const auto seed = min_max_seed();
    for (auto _ : state) benchmark::DoNotOptimize(lift_once(lang, seed));
}
BENCHMARK(BM_LiftOnce);

void BM_FindSymmetric(benchmark::State& state) {
    const Language lang = cut_language();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            find_symmetric_fpoly(lang, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FindSymmetric)->Arg(2)->Arg(3);

void BM_StpConvert(benchmark::State& state) {
    const Language lang = separable_d3();
    const auto pair = cyclic_pair_d3();
    for (auto _ : state) benchmark::DoNotOptimize(stp_to_submodular(lang, pair));
}
BENCHMARK(BM_StpConvert);

}  // namespace

BENCHMARK_MAIN();
