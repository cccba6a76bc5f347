// Serial versus OpenMP timings for the support scan and the explicit closure.
#include "loopmod/realizer.hpp"

#include <benchmark/benchmark.h>

using namespace loopmod;

namespace {

PsiSpec scan_spec() {
    PsiSpec s;
    s.algebra = build_algebra('A', 2);
    s.n = 2;
    s.dims = {3, 2};
    s.evals = {{CycScalar::rational(1), CycScalar::root(1, 3), CycScalar::rational(make_rational(2, 1))},
               {CycScalar::rational(1), CycScalar::rational(-1)}};
    s.weights = {{1, 0}, {0, 1}, {2, 1}, {1, 1}, {1, 2}, {0, 3}};
    normalize_spec(s);
    return s;
}

PsiSpec closure_spec() {
    PsiSpec s;
    s.algebra = build_algebra('A', 1);
    s.n = 1;
    s.dims = {2};
    s.evals = {{CycScalar::rational(1), CycScalar::rational(-1)}};
    s.weights = {{2}, {2}};
    normalize_spec(s);
    return s;
}

void BM_support_scan(benchmark::State& st) {
    PsiSpec s = scan_spec();
    auto pts = box_points(IntVec(2, -st.range(0)), IntVec(2, st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(support_flags(s, pts, st.range(1) != 0));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_support_scan)->ArgsProduct({{8, 24}, {0, 1}})->ArgNames({"radius", "parallel"});

void BM_component_closure(benchmark::State& st) {
    PsiSpec s = closure_spec();
    RealizerOptions opt;
    opt.radius = st.range(0);
    opt.parallel = st.range(1) != 0;
    Lattice g = support_lattice(s);
    for (auto _ : st) benchmark::DoNotOptimize(decompose(s, g, opt));
}
BENCHMARK(BM_component_closure)->ArgsProduct({{4, 8}, {0, 1}})->ArgNames({"radius", "parallel"})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
