// Microbenchmarks for the kernels the verification sweeps lean on: the
// bracket, one Jacobi triple, windowed structure constants, the module-axiom
// sweep, the classification round trip, and the intertwiner search.

#include <benchmark/benchmark.h>

#include <vector>

#include <divfree/classify.hpp>
#include <divfree/intertwiner.hpp>
#include <divfree/sampling.hpp>
#include <divfree/verify.hpp>

namespace {

using namespace divfree;

const Space& space3() {
  static const Space W = Space::standard(3);
  return W;
}

GroupElement ge(std::vector<std::int64_t> xs) { return GroupElement(std::move(xs)); }

Functional fn(std::vector<std::int64_t> xs) {
  std::vector<Scalar> c;
  for (auto x : xs) c.emplace_back(x);
  return Functional(std::move(c));
}

std::vector<WittElement> sample_elements(int count, int radius, int terms) {
  Sampler s(20240817);
  std::vector<WittElement> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(s.witt_element(space3(), radius, terms));
  return out;
}

void BM_Bracket(benchmark::State& state) {
  const auto& W = space3();
  const auto elems = sample_elements(64, 2, static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& u = elems[i % elems.size()];
    const auto& v = elems[(i + 17) % elems.size()];
    benchmark::DoNotOptimize(bracket(W, u, v));
    ++i;
  }
}
BENCHMARK(BM_Bracket)->Arg(1)->Arg(3)->Arg(6);

void BM_JacobiTriple(benchmark::State& state) {
  const auto& W = space3();
  const auto elems = sample_elements(48, 2, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& u = elems[i % elems.size()];
    const auto& v = elems[(i + 7) % elems.size()];
    const auto& w = elems[(i + 29) % elems.size()];
    auto total = bracket(W, u, bracket(W, v, w));
    total += bracket(W, v, bracket(W, w, u));
    total += bracket(W, w, bracket(W, u, v));
    benchmark::DoNotOptimize(total.is_zero());
    ++i;
  }
}
BENCHMARK(BM_JacobiTriple);

void BM_StructureConstants(benchmark::State& state) {
  const auto& W = space3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(structure_constants(W, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_StructureConstants)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ModuleAxiomSweep(benchmark::State& state) {
  const auto& W = space3();
  const auto spec = ModuleSpec::family_a(ge({1, -1, 0}), fn({2, 3, 5}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_module_axiom(W, spec, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_ModuleAxiomSweep)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ClassifyRoundTrip(benchmark::State& state) {
  const auto& W = space3();
  const auto spec = ModuleSpec::family_b(ge({0, 1, 1}), fn({1, 0, 4}));
  const auto table = record_action_table(W, spec, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_table(W, table));
  }
}
BENCHMARK(BM_ClassifyRoundTrip)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_IntertwinerSolve(benchmark::State& state) {
  const auto& W = space3();
  const auto dom = ModuleSpec::family_m(fn({1, 2, 3}));
  const auto cod = ModuleSpec::family_m(fn({2, 2, 2}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_intertwiner(W, dom, cod, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_IntertwinerSolve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
