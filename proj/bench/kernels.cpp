// Serial reference vs OpenMP path for the three parallel kernels.
// Arg(0) = serial, Arg(1) = parallel.

#include "cmvf/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace cmvf;

namespace {

Execution mode(const benchmark::State& state)
{
    return state.range(0) ? Execution::parallel : Execution::serial;
}

const GeometricComplex& planar_mesh()
{
    static const GeometricComplex mesh = build_mesh(builtin_system("planar9"));
    return mesh;
}

const VectorFieldExpr& planar_field()
{
    static const VectorFieldExpr f = builtin_system("planar9").vector_field();
    return f;
}

const Analysis& planar_analysis()
{
    static const Analysis a = analyze(builtin_system("planar9"));
    return a;
}

void BM_Transitions(benchmark::State& state)
{
    const auto& mesh = planar_mesh();
    const auto& f = planar_field();
    TransitionOptions options;
    options.exec = mode(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(transitions(mesh, f, options));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_Classify(benchmark::State& state)
{
    const auto& a = planar_analysis();
    const auto& parts = a.field().multivectors();
    for (auto _ : state)
        benchmark::DoNotOptimize(classify(a.complex(), parts, mode(state)));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_VerifyIntervals(benchmark::State& state)
{
    const auto& a = planar_analysis();
    const auto cm = connection_matrix(*a.graph, a.morse);
    VerifyOptions options;
    options.exec = mode(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_connection_matrix(cm, *a.graph, a.morse, options));
    state.SetLabel(state.range(0) ? "parallel" : "serial");
}

} // namespace

BENCHMARK(BM_Transitions)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyIntervals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
