#include <benchmark/benchmark.h>

#include "unigauss/mor.hpp"

using namespace unigauss;

namespace {

std::vector<Mat> inputs(const FieldPtr& f, int d, int n) {
  Rng rng(42);
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) out.push_back(random_unitary(f, d, rng));
  return out;
}

// Fixed field F_49, growing dimension.
void BM_DecomposeDim(benchmark::State& state) {
  const FieldPtr f = Field::get(7, 2);
  const int d = static_cast<int>(state.range(0));
  const auto gs = inputs(f, d, 8);
  const DecomposeOptions opts{.validate_input = false, .check_steps = false};
  std::size_t k = 0;
  std::uint64_t mults = 0;
  for (auto _ : state) {
    MulCounter c;
    benchmark::DoNotOptimize(decompose(gs[k++ % gs.size()], opts));
    mults += c.count();
  }
  state.counters["mults"] = benchmark::Counter(static_cast<double>(mults), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_DecomposeDim)->Arg(10)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

// Fixed dimension, growing extension degree of F_3.
void BM_DecomposeExt(benchmark::State& state) {
  const FieldPtr f = Field::get(3, static_cast<std::uint32_t>(state.range(0)));
  const auto gs = inputs(f, 20, 8);
  const DecomposeOptions opts{.validate_input = false, .check_steps = false};
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(gs[k++ % gs.size()], opts));
}
BENCHMARK(BM_DecomposeExt)->DenseRange(1, 6)->Unit(benchmark::kMicrosecond);

void BM_DecomposeTower(benchmark::State& state) {
  const FieldPtr f = Field::create(7, 2, {.force_tower = true});
  const auto gs = inputs(f, 20, 8);
  const DecomposeOptions opts{.validate_input = false, .check_steps = false};
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(gs[k++ % gs.size()], opts));
}
BENCHMARK(BM_DecomposeTower)->Unit(benchmark::kMicrosecond);

void BM_WordFor(benchmark::State& state) {
  const FieldPtr f = Field::get(7, 1);
  const auto gs = inputs(f, static_cast<int>(state.range(0)), 8);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(word_for(gs[k++ % gs.size()]));
}
BENCHMARK(BM_WordFor)->Arg(8)->Arg(9)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_FieldMul(benchmark::State& state) {
  const FieldPtr f = state.range(0) ? Field::create(7, 2, {.force_tower = true}) : Field::get(7, 2);
  Rng rng(1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = f->random(rng);
  Elem acc = f->one();
  std::size_t k = 0;
  for (auto _ : state) {
    acc = f->add(f->mul(acc, xs[k++ & 1023]), f->one());
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(0)->Arg(1);

void BM_MorApply(benchmark::State& state) {
  const FieldPtr f = Field::get(3, 1);
  const int d = static_cast<int>(state.range(0));
  Rng rng(7);
  const auto gens = GeneratorSet::make(f, d);
  const Automorphism aut = conjugation_automorphism(random_similitude(f, d, rng), gens);
  const Mat m = word_evaluate(f, random_elementary_word(*f, d, rng, 10 * d * d));
  for (auto _ : state) benchmark::DoNotOptimize(apply(aut, m));
}
BENCHMARK(BM_MorApply)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
