#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "powercomm/belief.hpp"
#include "powercomm/features.hpp"
#include "powercomm/lexicon.hpp"
#include "powercomm/model.hpp"
#include "powercomm/stats.hpp"
#include "powercomm/synth.hpp"
#include "powercomm/textproc.hpp"

namespace {

using namespace powercomm;

const TextProcessor& proc() {
  static const Lexicons lex = Lexicons::builtin();
  static const TextProcessor tp(lex);
  return tp;
}

const BeliefTagger& tagger() {
  static const BeliefTagger bt(proc());
  return bt;
}

const std::string kBody =
    "I know the team finished the draft yesterday. Sara says John will "
    "submit the report by Friday. We may need to revise the budget before "
    "the meeting. Could you send the updated schedule? I need you to "
    "approve the plan today. If I need the figures, I will let you know. "
    "The client thinks the proposal may change next week.";

void BM_Tokenize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(proc().tokenize(kBody));
}
BENCHMARK(BM_Tokenize);

void BM_AnalyzeMessage(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(proc().analyze(kBody));
}
BENCHMARK(BM_AnalyzeMessage);

void BM_TagSentences(benchmark::State& state) {
  const std::vector<Sentence> sentences = proc().analyze(kBody);
  for (auto _ : state)
    benchmark::DoNotOptimize(tagger().tag_sentences(sentences));
}
BENCHMARK(BM_TagSentences);

void BM_BuildNgrams(benchmark::State& state) {
  const std::vector<Sentence> sentences = proc().analyze(kBody);
  std::vector<std::map<int, BeliefLabel>> labels(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i)
    for (int h : tagger().find_heads(sentences[i]))
      labels[i][h] = tagger().classify_head(sentences[i], h);
  for (auto _ : state) {
    for (size_t i = 0; i < sentences.size(); ++i)
      for (int order : {1, 2, 3})
        benchmark::DoNotOptimize(FeatureExtractor::build_ngrams(
            sentences[i], labels[i], NgramFamily::LN, order,
            AppendMode::APPEND));
  }
}
BENCHMARK(BM_BuildNgrams);

std::vector<Instance> bench_instances() {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  std::vector<Instance> out;
  for (int i = 0; i < 400; ++i) {
    Instance ins;
    ins.id = "t" + std::to_string(i);
    ins.label = i % 2 ? 1 : -1;
    for (int f = 0; f < 40; ++f) {
      if (val(gen) < 0.4) continue;
      const double sign = ins.label * (f % 2 ? 1.0 : -1.0);
      ins.features["F:" + std::to_string(f)] = val(gen) + 0.2 * sign;
    }
    out.push_back(std::move(ins));
  }
  return out;
}

void BM_TrainSvm(benchmark::State& state) {
  const std::vector<Instance> train = bench_instances();
  const Vocabulary vocab = build_vocabulary(train, 1);
  TrainConfig cfg;
  cfg.reg_strength = 0.1;
  cfg.epochs = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(train_svm(train, vocab, cfg));
}
BENCHMARK(BM_TrainSvm)->Arg(1)->Arg(10);

void BM_Randomization(benchmark::State& state) {
  std::mt19937 gen(5);
  std::vector<int> a, b;
  for (int i = 0; i < 200; ++i) {
    a.push_back(gen() % 4 != 0);
    b.push_back(gen() % 4 != 0);
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(approx_randomization(a, b, 10000, 7));
}
BENCHMARK(BM_Randomization);

void BM_GenerateCorpus(benchmark::State& state) {
  SynthConfig cfg = default_synth_config();
  cfg.n_threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_corpus(cfg));
}
BENCHMARK(BM_GenerateCorpus)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
