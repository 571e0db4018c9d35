// Serial vs OpenMP paths of the hot kernels.
#include <benchmark/benchmark.h>

#include "spm/module.hpp"
#include "spm/primes.hpp"
#include "spm/ring.hpp"

namespace {

using namespace spm;

ModulePtr module_for(int which) {
  switch (which) {
    case 0:
      return FinModule::create(make_zmod(2), 3, {});
    case 1:
      return FinModule::create(make_zmod(4), 2, {});
    case 2:
      return FinModule::create(make_product({make_zmod(2), make_zmod(4)}), 2, {});
    default:
      return FinModule::create(make_poly_quotient(make_zmod(2), {1, 1, 1}), 2, {});
  }
}

Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_EnumerateSubmodules(benchmark::State& state) {
  const auto m = module_for(static_cast<int>(state.range(0)));
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_submodules(m, {}, exec));
}

void BM_IsStronglyPrime(benchmark::State& state) {
  const auto m = module_for(static_cast<int>(state.range(0)));
  const auto lattice = enumerate_submodules(m);
  const auto exec = exec_of(state);
  for (auto _ : state)
    for (const auto& n : lattice)
      if (n.size() < m->order()) benchmark::DoNotOptimize(is_strongly_prime(n, exec));
}

void BM_SSpec(benchmark::State& state) {
  const auto m = module_for(static_cast<int>(state.range(0)));
  const auto lattice = enumerate_submodules(m);
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(s_spec(lattice, exec));
}

void args(benchmark::internal::Benchmark* b) {
  for (int m = 0; m < 4; ++m)
    for (int e = 0; e < 2; ++e) b->Args({m, e});
  b->ArgNames({"module", "parallel"});
}

}  // namespace

BENCHMARK(BM_EnumerateSubmodules)->Apply(args);
BENCHMARK(BM_IsStronglyPrime)->Apply(args);
BENCHMARK(BM_SSpec)->Apply(args);

BENCHMARK_MAIN();
