#include <benchmark/benchmark.h>

#include "idpf/dpf.h"
#include "idpf/interpolation.h"
#include "idpf/key_codec.h"
#include "idpf/matching_family.h"
#include "idpf/params.h"

namespace {

using namespace idpf;

const DpfParams& Params511() {
  static const DpfParams p = BuildParams({7, 73}, 2);
  return p;
}

const InterpolationScheme& Scheme511() {
  static const InterpolationScheme s = BuildScheme(Params511(), 3).scheme;
  return s;
}

Dpf MakeDpf(std::size_t h) {
  return Dpf(Params511(), TrivialFamily(Params511().M, h), Scheme511());
}

void BM_FieldMul(benchmark::State& state) {
  const auto& ctx = Params511().ctx;
  FieldElement a = Params511().gamma;
  const FieldElement b = Params511().H[100];
  for (auto _ : state) {
    a = ctx.Mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul);

void BM_Gen(benchmark::State& state) {
  const Dpf dpf = MakeDpf(static_cast<std::size_t>(state.range(0)));
  const PointFunction f = dpf.MakePointFunction(1, 1);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(dpf.Gen(f, rng));
}
BENCHMARK(BM_Gen)->RangeMultiplier(2)->Range(2, 64);

void BM_Eval(benchmark::State& state) {
  const Dpf dpf = MakeDpf(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  const auto keys = dpf.Gen(dpf.MakePointFunction(1, 1), rng);
  std::uint64_t x = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dpf.Eval(keys[0], x));
    x = x % dpf.N() + 1;
  }
}
BENCHMARK(BM_Eval)->RangeMultiplier(2)->Range(2, 64);

void BM_FullEval(benchmark::State& state) {
  const Dpf dpf = MakeDpf(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  const auto keys = dpf.Gen(dpf.MakePointFunction(1, 1), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dpf.FullEval(keys[0]));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dpf.N()));
}
BENCHMARK(BM_FullEval)->Arg(16)->Arg(64);

void BM_KeyCodec(benchmark::State& state) {
  const Dpf dpf = MakeDpf(16);
  Rng rng(1);
  const auto keys = dpf.Gen(dpf.MakePointFunction(1, 1), rng);
  const auto& ctx = dpf.params().ctx;
  for (auto _ : state) {
    const auto bytes = EncodeKey(ctx, keys[2]);
    benchmark::DoNotOptimize(DecodeKey(ctx, dpf.h(), dpf.n(), bytes));
  }
  state.counters["key_bytes"] = static_cast<double>(EncodeKey(ctx, keys[2]).size());
}
BENCHMARK(BM_KeyCodec);

void BM_SchemeSearch(benchmark::State& state) {
  const DpfParams params = BuildParams({2, 3}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(BuildScheme(params, 1));
}
BENCHMARK(BM_SchemeSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
