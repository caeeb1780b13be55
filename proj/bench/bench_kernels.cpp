// Serial reference vs OpenMP kernels: character-sum tables and identity scans.

#include <benchmark/benchmark.h>

#include "ffhyper/char_sums.hpp"
#include "ffhyper/identity.hpp"
#include "ffhyper/run.hpp"

using namespace ffhyper;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

Backend modular_for(const FieldCtx& f) { return make_backend(BackendKind::modular_embed, f.p(), f.q() - 1, 1); }

void BM_GaussTable(benchmark::State& state) {
  const auto f = field_for_order(static_cast<std::uint32_t>(state.range(0)));
  const Backend b = modular_for(*f);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gauss_table(*f, b, exec_of(state)));
}

void BM_JacobiTable(benchmark::State& state) {
  const auto f = field_for_order(static_cast<std::uint32_t>(state.range(0)));
  const Backend b = modular_for(*f);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::jacobi_table(*f, b, exec_of(state)));
}

void BM_Scan(benchmark::State& state, const char* id, const char* strategy) {
  const auto f = field_for_order(static_cast<std::uint32_t>(state.range(0)));
  const CharSums sums(f, modular_for(*f));
  const auto& d = find_identity(id);
  const Strategy st = Strategy::parse(strategy);
  ScanOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(scan(d, sums, st, opts));
}

}  // namespace

// range(0) = q, range(1) = 0 serial / 1 parallel
BENCHMARK(BM_GaussTable)->ArgsProduct({{49, 81, 243}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_JacobiTable)->ArgsProduct({{49, 81, 243}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scan, mt41_exhaustive, "MT41", "exhaustive")
    ->ArgsProduct({{9, 13}, {0, 1}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scan, g2_random, "LEMMA_PACK:g2", "random:500:1")
    ->ArgsProduct({{49, 81}, {0, 1}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Scan, f4_random, "F4_PRODUCT", "random:200:1")
    ->ArgsProduct({{29, 49}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
