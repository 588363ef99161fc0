#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "folbridge/conversion.hpp"
#include "folbridge/parser.hpp"
#include "folbridge/pipeline.hpp"
#include "folbridge/smt.hpp"

using namespace folbridge;

namespace {

const char* const kFiles[] = {"hd_error.fol", "length.fol", "search_lemma.fol", "tree_size.fol", "nested_match.fol"};

std::string corpus(const char* name) {
  std::ifstream in(std::string(FOLBRIDGE_CORPUS_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void BM_Parse(benchmark::State& state) {
  const std::string text = corpus(kFiles[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(parse_problem(text));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Parse)->DenseRange(0, 4);

void BM_Scope(benchmark::State& state) {
  const ProofState input = initial_state(parse_problem(corpus(kFiles[state.range(0)])));
  for (auto _ : state) benchmark::DoNotOptimize(scope(input));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_Scope)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ScopeUncertified(benchmark::State& state) {
  const ProofState input = initial_state(parse_problem(corpus(kFiles[state.range(0)])));
  PipelineConfig c;
  c.certify_each = false;
  for (auto _ : state) benchmark::DoNotOptimize(scope(input, c));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_ScopeUncertified)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ExtractAndEmit(benchmark::State& state) {
  const ProofState s = scope(initial_state(parse_problem(corpus(kFiles[state.range(0)])))).state;
  for (auto _ : state) benchmark::DoNotOptimize(emit_smtlib(extract_fol(s), s.env));
  state.SetLabel(kFiles[state.range(0)]);
}
BENCHMARK(BM_ExtractAndEmit)->DenseRange(0, 4);

// app over two lists of length n, compared with the concatenation written out.
void BM_Convertible(benchmark::State& state) {
  Problem p = parse_problem(corpus("search_lemma.fol"));
  auto list = [](std::int64_t from, std::int64_t n) {
    std::string s = "nil Int";
    for (std::int64_t i = from + n; i-- > from;) s = "cons Int " + std::to_string(i) + " (" + s + ")";
    return s;
  };
  const std::int64_t n = state.range(0);
  const Term lhs = parse_term("app Int (" + list(0, n) + ") (" + list(n, n) + ")", p.env);
  const Term rhs = parse_term(list(0, 2 * n), p.env);
  for (auto _ : state) benchmark::DoNotOptimize(convertible(p.env, {}, lhs, rhs));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Convertible)->RangeMultiplier(4)->Range(4, 256)->Complexity();

}  // namespace
BENCHMARK_MAIN();
