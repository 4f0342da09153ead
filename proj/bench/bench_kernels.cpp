// Serial reference kernels against their OpenMP versions.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "rio/kernels.hpp"
#include "rio/protocol.hpp"

namespace {

std::vector<rio::Complex> random_amps(std::size_t qubits) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<rio::Complex> a(std::size_t{1} << qubits);
    for (auto& z : a) z = {g(rng), g(rng)};
    return a;
}

rio::Matrix random_op(std::size_t k) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << k);
    rio::Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

template <void (*Kernel)(std::span<rio::Complex>, const rio::Matrix&, std::span<const unsigned>)>
void BM_Apply(benchmark::State& state) {
    const auto qubits = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    auto amps = random_amps(qubits);
    const auto op = random_op(k);
    std::vector<unsigned> bits;
    for (std::size_t t = 0; t < k; ++t) bits.push_back(static_cast<unsigned>(2 * t + 1));
    for (auto _ : state) {
        Kernel(amps, op, bits);
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <double (*Kernel)(std::span<rio::Complex>, unsigned, int)>
void BM_Project(benchmark::State& state) {
    const auto qubits = static_cast<std::size_t>(state.range(0));
    const auto base = random_amps(qubits);
    for (auto _ : state) {
        auto amps = base;
        benchmark::DoNotOptimize(Kernel(amps, 3, 1));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.size()));
}

void apply_args(benchmark::internal::Benchmark* b) {
    for (int q : {10, 14, 18})
        for (int k : {1, 2, 3}) b->Args({q, k});
}

BENCHMARK(BM_Apply<rio::kernels::apply_reference>)->Name("apply/reference")->Apply(apply_args);
BENCHMARK(BM_Apply<rio::kernels::apply_parallel>)->Name("apply/parallel")->Apply(apply_args);
BENCHMARK(BM_Project<rio::kernels::project_reference>)->Name("project/reference")->Arg(14)->Arg(18);
BENCHMARK(BM_Project<rio::kernels::project_parallel>)->Name("project/parallel")->Arg(14)->Arg(18);

rio::protocol::ProtocolConfig branch_config() {
    rio::protocol::ProtocolConfig c;
    c.family = rio::protocol::Family::CombinedNQ;
    c.N = 2;
    c.first.x = 5;
    c.second.x = 17;
    rio::protocol::randomize(c, 3);
    return c;
}

void BM_BranchesSerial(benchmark::State& state) {
    const auto c = branch_config();
    for (auto _ : state) benchmark::DoNotOptimize(rio::protocol::run_all_serial(c));
}

void BM_BranchesParallel(benchmark::State& state) {
    const auto c = branch_config();
    for (auto _ : state) benchmark::DoNotOptimize(rio::protocol::run_all(c));
}

BENCHMARK(BM_BranchesSerial)->Name("branches/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BranchesParallel)->Name("branches/parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
