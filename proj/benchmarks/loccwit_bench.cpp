#include <benchmark/benchmark.h>

#include <random>

#include "loccwit/fixtures.hpp"
#include "loccwit/schmidt.hpp"
#include "loccwit/search.hpp"
#include "loccwit/witness.hpp"

namespace {

using namespace loccwit;

PureState random_state(const SubsystemLayout& layout, std::uint64_t seed) {
  return random_orthonormal_basis(layout, seed).front();
}

void BM_Schmidt(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const SubsystemLayout layout({{"A", d}, {"B", d}, {"C", d}, {"D", d}});
  const auto s = random_state(layout, 1);
  const auto cut = Bipartition::parse("AC:BD");
  for (auto _ : state) benchmark::DoNotOptimize(schmidt(s, cut));
}
BENCHMARK(BM_Schmidt)->Arg(2)->Arg(3)->Arg(4);

void BM_ReducedDensitySpectrum(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const SubsystemLayout layout({{"A", d}, {"B", d}, {"C", d}, {"D", d}});
  const auto s = random_state(layout, 1);
  const auto cut = Bipartition::parse("AC:BD");
  for (auto _ : state) benchmark::DoNotOptimize(reduced_density_spectrum(s, cut));
}
BENCHMARK(BM_ReducedDensitySpectrum)->Arg(2)->Arg(3)->Arg(4);

void BM_CheckWitnessSPrime(benchmark::State& state) {
  const auto bell = fixtures::bell_states("C", "D");
  const WitnessProblem p(fixtures::set_S_prime(), {bell[0], bell[1], bell[2]}, {0.16, 0.16, 0.68});
  for (auto _ : state) benchmark::DoNotOptimize(check_witness(p));
}
BENCHMARK(BM_CheckWitnessSPrime);

void BM_ClassifyFullBasis(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto basis = random_orthonormal_basis(SubsystemLayout({{"A", d}, {"B", d}}), 3);
  for (auto _ : state) benchmark::DoNotOptimize(classify_full_basis(basis));
}
BENCHMARK(BM_ClassifyFullBasis)->Arg(2)->Arg(3);

void BM_SearchSPrime(benchmark::State& state) {
  SearchConfig cfg;
  cfg.mode = state.range(0) == 0 ? SearchMode::kFixedBellEnumeration : SearchMode::kFreeDetectors;
  cfg.threads = 1;
  const auto states = fixtures::set_S_prime();
  for (auto _ : state) benchmark::DoNotOptimize(search(states, cfg));
}
BENCHMARK(BM_SearchSPrime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SearchSExhaustive(benchmark::State& state) {
  SearchConfig cfg;
  cfg.restarts = 24;
  cfg.threads = 1;
  const auto states = fixtures::set_S();
  for (auto _ : state) benchmark::DoNotOptimize(search(states, cfg));
}
BENCHMARK(BM_SearchSExhaustive)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
