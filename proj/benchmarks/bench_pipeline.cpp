// Micro-benchmarks for the pipeline stages that dominate a run: chart
// parsing (gold vs induced categories), grounding, query execution and
// candidate assembly.

#include <benchmark/benchmark.h>

#include <sstream>

#include "ccgsem/induction.hpp"
#include "ccgsem/pipeline.hpp"
#include "ccgsem/semantics.hpp"
#include "ccgsem/synth.hpp"

using namespace ccgsem;

namespace {

SynthConfig small_config() {
  SynthConfig cfg;
  cfg.seed = 5;
  cfg.companies = 60;
  cfg.people = 30;
  cfg.cities = 20;
  cfg.countries = 8;
  cfg.years = 20;
  cfg.train_sentences = 40;
  cfg.test_sentences = 40;
  return cfg;
}

const SynthOutput& data() {
  static SynthOutput out = generate_synth(small_config());
  return out;
}

const CorpusRecord& longest_record() {
  static const CorpusRecord* rec = [] {
    const CorpusRecord* best = &data().test[0];
    for (const auto& r : data().test)
      if (r.tokens.size() > best->tokens.size()) best = &r;
    return best;
  }();
  return *rec;
}

std::vector<std::set<CoindexedCategory>> gold_categories(
    const CorpusRecord& rec) {
  Lexicon lex;
  lex.mode = LexiconMode::Gold;
  return candidate_categories(rec, lex, RunConfig{});
}

}  // namespace

static void BM_ParseGold(benchmark::State& state) {
  const auto& rec = longest_record();
  auto cands = gold_categories(rec);
  ParseConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(parse(rec.tokens, cands, cfg));
}
BENCHMARK(BM_ParseGold);

static void BM_ParseInduced(benchmark::State& state) {
  const auto& rec = longest_record();
  Lexicon lex;
  lex.mode = LexiconMode::Induced;
  auto cands = candidate_categories(rec, lex, RunConfig{});
  ParseConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(parse(rec.tokens, cands, cfg));
}
BENCHMARK(BM_ParseInduced);

static void BM_InduceCategories(benchmark::State& state) {
  std::vector<std::string> pos;
  for (const auto& t : longest_record().tokens) pos.push_back(t.pos);
  for (auto _ : state)
    benchmark::DoNotOptimize(induce_categories(pos, {}));
}
BENCHMARK(BM_InduceCategories);

static void BM_ComposeTopDerivation(benchmark::State& state) {
  const auto& rec = longest_record();
  auto cands = gold_categories(rec);
  auto derivs = parse(rec.tokens, cands, {});
  for (auto _ : state)
    benchmark::DoNotOptimize(compose(derivs[0], rec.tokens));
}
BENCHMARK(BM_ComposeTopDerivation);

static void BM_Ground(benchmark::State& state) {
  const auto& rec = longest_record();
  auto cands = gold_categories(rec);
  auto derivs = parse(rec.tokens, cands, {});
  auto graphs = compose(derivs[0], rec.tokens);
  for (auto _ : state)
    benchmark::DoNotOptimize(ground(graphs[0], data().kb));
}
BENCHMARK(BM_Ground);

static void BM_Execute(benchmark::State& state) {
  const auto& rec = longest_record();
  Lexicon lex;
  lex.mode = LexiconMode::Gold;
  auto set = assemble_candidates(rec, lex, data().kb, RunConfig{});
  for (auto _ : state)
    for (const auto& g : set.candidates)
      benchmark::DoNotOptimize(execute(g, data().kb));
}
BENCHMARK(BM_Execute);

static void BM_AssembleCandidates(benchmark::State& state) {
  const auto& rec = longest_record();
  Lexicon lex;
  lex.mode = LexiconMode::Gold;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        assemble_candidates(rec, lex, data().kb, RunConfig{}));
}
BENCHMARK(BM_AssembleCandidates);

BENCHMARK_MAIN();
