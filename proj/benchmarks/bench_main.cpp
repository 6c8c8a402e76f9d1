#include <benchmark/benchmark.h>

#include <random>

#include "entprod/ising_register.hpp"
#include "entprod/measure.hpp"
#include "entprod/spinor.hpp"
#include "entprod/states.hpp"

using namespace entprod;

namespace {

Matrix random_density_matrix(std::mt19937& rng, std::size_t d) {
    std::normal_distribution<double> gauss;
    Matrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

SpaceLayout qubits(std::size_t n) {
    return SpaceLayout(std::vector<std::size_t>(n, 2));
}

}  // namespace

static void BM_TensorProduct(benchmark::State& state) {
    std::mt19937 rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseOperator a(qubits(n), random_density_matrix(rng, 1u << n));
    const DenseOperator b(qubits(n), random_density_matrix(rng, 1u << n));
    for (auto _ : state) benchmark::DoNotOptimize(tensor_product(a, b));
    state.SetComplexityN(static_cast<int64_t>(1) << (2 * n));
}
BENCHMARK(BM_TensorProduct)->DenseRange(2, 5)->Complexity();

static void BM_PartialTrace(benchmark::State& state) {
    std::mt19937 rng(2);
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseOperator op(qubits(n), random_density_matrix(rng, 1u << n));
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(op, {0}));
    state.SetComplexityN(static_cast<int64_t>(1) << n);
}
BENCHMARK(BM_PartialTrace)->DenseRange(4, 10)->Complexity();

static void BM_EntanglementProduction(benchmark::State& state) {
    std::mt19937 rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseOperator op(qubits(n), random_density_matrix(rng, 1u << n));
    const Partition p = Partition::singletons(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(entanglement_production(op, p));
}
BENCHMARK(BM_EntanglementProduction)->DenseRange(2, 8);

static void BM_PureStateMeasureCat(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const Vector psi = states::state_vector(states::NamedState::ghz(n));
    const SpaceLayout layout = qubits(static_cast<std::size_t>(n));
    const Partition p = Partition::singletons(static_cast<std::size_t>(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(pure_state_measure(psi, layout, p));
}
BENCHMARK(BM_PureStateMeasureCat)->DenseRange(4, 12)->Unit(benchmark::kMicrosecond);

static void BM_GibbsMeasure4x4(benchmark::State& state) {
    const DenseOperator h = ising::hamiltonian({1.0, 0.7, 1.0});
    const Partition p({{0}, {1}}, 2);
    for (auto _ : state) benchmark::DoNotOptimize(gibbs_measure(h, 2.0, p));
}
BENCHMARK(BM_GibbsMeasure4x4);

static void BM_RegisterSweep(benchmark::State& state) {
    const auto steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ising::sweep({0.05, 50.0, steps},
                                              {0.0, 20.0, steps},
                                              ising::Coupling::ferro));
}
BENCHMARK(BM_RegisterSweep)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_RepDimension(benchmark::State& state) {
    const long n = state.range(0);
    const spinor::YoungDiagram d = spinor::YoungDiagram::spin_half(n, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(spinor::rep_dimension(d));
}
BENCHMARK(BM_RepDimension)->Arg(20)->Arg(60)->Arg(170);

static void BM_BruteForceParticleMeasure(benchmark::State& state) {
    const long n = state.range(0);
    const spinor::SpinHalfState s(n, 1.0, 1.0, 0.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(spinor::brute_force_particle_measure(s));
    state.SetComplexityN(n);
}
BENCHMARK(BM_BruteForceParticleMeasure)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
