#include <algorithm>

#include <benchmark/benchmark.h>

#include "otinfo/channel.hpp"
#include "otinfo/measures.hpp"
#include "otinfo/info_otp.hpp"
#include "otinfo/oracles.hpp"
#include "otinfo/transport_lp.hpp"

using namespace otinfo;

namespace {

oracles::Instance make_instance(std::size_t n) {
    oracles::InstanceSpec spec;
    spec.nx = spec.ny = n;
    spec.seed = 31337;
    spec.cost_kind = oracles::CostKind::random_uniform;
    spec.marginal_kind = oracles::MarginalKind::random_dirichlet;
    return oracles::generate(spec);
}

void BM_SolveOtp(benchmark::State& state) {
    oracles::Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        TransportSolution sol = solve_otp(inst.q, inst.p, inst.c);
        benchmark::DoNotOptimize(sol.value);
    }
}
BENCHMARK(BM_SolveOtp)->Arg(4)->Arg(16)->Arg(64);

void BM_BlahutArimoto(benchmark::State& state) {
    oracles::Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        ChannelSolution sol = solve_ocp_at_beta(inst.q, inst.c, 5.0);
        benchmark::DoNotOptimize(sol.value);
    }
}
BENCHMARK(BM_BlahutArimoto)->Arg(4)->Arg(16)->Arg(64);

void BM_SolveOcp(benchmark::State& state) {
    oracles::Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
    InfoBudget budget(0.3 * entropy(inst.q));
    for (auto _ : state) {
        ChannelSolution sol = solve_ocp(inst.q, inst.c, budget);
        benchmark::DoNotOptimize(sol.value);
    }
}
BENCHMARK(BM_SolveOcp)->Arg(4)->Arg(16);

void BM_ConstrainedOtp(benchmark::State& state) {
    oracles::Instance inst = make_instance(static_cast<std::size_t>(state.range(0)));
    InfoBudget budget(0.3 * std::min(entropy(inst.q), entropy(inst.p)));
    for (auto _ : state) {
        ConstrainedTransportSolution sol =
            solve_constrained_otp(inst.q, inst.p, inst.c, budget);
        benchmark::DoNotOptimize(sol.value);
    }
}
BENCHMARK(BM_ConstrainedOtp)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
