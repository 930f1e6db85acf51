#include "powercomm/pipeline.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "powercomm/features.hpp"
#include "powercomm/lexicon.hpp"
#include "powercomm/model.hpp"
#include "powercomm/synth.hpp"
#include "powercomm/textproc.hpp"

namespace powercomm {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

// Input/flag problems exit with code 1; anything else that throws exits 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path, const char* producer) {
  if (!fs::exists(path))
    throw ValidationError("missing input artifact: " + path +
                          " (produce it with the `" + std::string(producer) +
                          "` command)");
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ValidationError("cannot create output directory " + dir + ": " +
                          ec.message());
}

std::string out_path(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write file: " + path);
  return f;
}

// Every command drops a manifest next to its outputs: the command, its
// config snapshot, the artifact paths, and timing. Reruns with an identical
// manifest (timing aside) produce byte-identical artifacts.
class ManifestWriter {
 public:
  ManifestWriter(std::string command, std::string out_dir)
      : command_(std::move(command)),
        out_dir_(std::move(out_dir)),
        start_(std::chrono::steady_clock::now()) {}

  ordered_json config = ordered_json::object();
  ordered_json inputs = ordered_json::object();
  ordered_json outputs = ordered_json::object();
  std::uint64_t seed = 0;

  void write() const {
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start_)
            .count();
    ordered_json j;
    j["schema"] = 1;
    j["command"] = command_;
    j["tool_version"] = kToolVersion;
    j["seed"] = seed;
    j["config"] = config;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["timing_ms"] = ms;
    auto f = open_out(out_path(out_dir_, (command_ + ".manifest.json").c_str()));
    f << j.dump(2) << '\n';
  }

 private:
  std::string command_;
  std::string out_dir_;
  std::chrono::steady_clock::time_point start_;
};

Lexicons load_lexicons_opt(const std::string& dir) {
  if (dir.empty()) return Lexicons::builtin();
  if (!fs::exists(dir))
    throw ValidationError("lexicon directory not found: " + dir);
  return Lexicons::load_dir(dir);
}

// ---------------------------------------------------------------- synth --

struct SynthOpts {
  std::string config = "default";
  std::string out;
  std::uint64_t seed = 7;
  int threads = 0;  // 0 = take from config
};

RoleRates rates_from_json(const ordered_json& j, RoleRates base) {
  if (j.contains("cb")) base.cb = j["cb"].get<double>();
  if (j.contains("ncb")) base.ncb = j["ncb"].get<double>();
  if (j.contains("rob")) base.rob = j["rob"].get<double>();
  if (j.contains("na")) base.na = j["na"].get<double>();
  return base;
}

SynthConfig synth_config_from_file(const std::string& path, bool& contrast) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open synth config file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("invalid synth config JSON in " + path + ": " +
                          e.what());
  }
  SynthConfig c = default_synth_config();
  contrast = j.value("contrast", false);
  if (j.contains("n_threads")) c.n_threads = j["n_threads"].get<int>();
  if (j.contains("min_participants"))
    c.min_participants = j["min_participants"].get<int>();
  if (j.contains("max_participants"))
    c.max_participants = j["max_participants"].get<int>();
  if (j.contains("hierarchy_depth"))
    c.hierarchy_depth = j["hierarchy_depth"].get<int>();
  if (j.contains("min_messages")) c.min_messages = j["min_messages"].get<int>();
  if (j.contains("max_messages")) c.max_messages = j["max_messages"].get<int>();
  if (j.contains("min_sentences"))
    c.min_sentences = j["min_sentences"].get<int>();
  if (j.contains("max_sentences"))
    c.max_sentences = j["max_sentences"].get<int>();
  if (j.contains("superior")) c.superior = rates_from_json(j["superior"], c.superior);
  if (j.contains("subordinate"))
    c.subordinate = rates_from_json(j["subordinate"], c.subordinate);
  if (j.contains("ratios")) {
    const auto& r = j["ratios"];
    if (r.contains("train")) c.ratios.train = r["train"].get<double>();
    if (r.contains("dev")) c.ratios.dev = r["dev"].get<double>();
    if (r.contains("test")) c.ratios.test = r["test"].get<double>();
  }
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  return c;
}

int cmd_synth(const SynthOpts& o) {
  bool contrast = false;
  SynthConfig cfg;
  if (o.config == "default") {
    cfg = default_synth_config();
  } else if (o.config == "null") {
    cfg = null_synth_config();
  } else if (o.config == "contrast") {
    cfg = default_synth_config();
    cfg.n_threads = 1000;
    contrast = true;
  } else {
    cfg = synth_config_from_file(o.config, contrast);
  }
  cfg.seed = o.seed;
  if (o.threads > 0) cfg.n_threads = o.threads;

  ensure_out_dir(o.out);
  ManifestWriter manifest("synth", o.out);
  manifest.seed = cfg.seed;
  manifest.config = {{"config", o.config},
                     {"contrast", contrast},
                     {"n_threads", cfg.n_threads},
                     {"min_participants", cfg.min_participants},
                     {"max_participants", cfg.max_participants},
                     {"hierarchy_depth", cfg.hierarchy_depth},
                     {"min_messages", cfg.min_messages},
                     {"max_messages", cfg.max_messages},
                     {"min_sentences", cfg.min_sentences},
                     {"max_sentences", cfg.max_sentences},
                     {"superior",
                      {{"cb", cfg.superior.cb},
                       {"ncb", cfg.superior.ncb},
                       {"rob", cfg.superior.rob},
                       {"na", cfg.superior.na}}},
                     {"subordinate",
                      {{"cb", cfg.subordinate.cb},
                       {"ncb", cfg.subordinate.ncb},
                       {"rob", cfg.subordinate.rob},
                       {"na", cfg.subordinate.na}}}};

  SynthResult res;
  try {
    res = contrast ? generate_belief_contrast_corpus(cfg) : generate_corpus(cfg);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }

  const std::string corpus_path = out_path(o.out, "corpus.jsonl");
  const std::string dominance_path = out_path(o.out, "dominance.tsv");
  const std::string splits_path = out_path(o.out, "splits.tsv");
  const std::string book_path = out_path(o.out, "bookkeeping.tsv");
  save_corpus(res.corpus, corpus_path, dominance_path, splits_path);
  save_bookkeeping(res.bookkeeping, book_path);

  manifest.outputs = {{"corpus", corpus_path},
                      {"dominance", dominance_path},
                      {"splits", splits_path},
                      {"bookkeeping", book_path}};
  manifest.write();
  std::cout << format_stats_table(corpus_stats(res.corpus));
  return 0;
}

// --------------------------------------------------------------- ingest --

struct IngestOpts {
  std::string corpus, dominance, splits, out;
};

int cmd_ingest(const IngestOpts& o) {
  require_file(o.corpus, "synth");
  require_file(o.dominance, "synth");
  if (!o.splits.empty()) require_file(o.splits, "synth");
  ensure_out_dir(o.out);
  ManifestWriter manifest("ingest", o.out);
  manifest.inputs = {{"corpus", o.corpus}, {"dominance", o.dominance}};
  if (!o.splits.empty()) manifest.inputs["splits"] = o.splits;

  const Corpus corpus = load_corpus(o.corpus, o.dominance, o.splits);

  const std::string corpus_path = out_path(o.out, "corpus.jsonl");
  const std::string dominance_path = out_path(o.out, "dominance.tsv");
  const std::string splits_path = out_path(o.out, "splits.tsv");
  save_corpus(corpus, corpus_path, dominance_path, splits_path);

  const std::string stats_path = out_path(o.out, "corpus_stats.txt");
  const std::string table = format_stats_table(corpus_stats(corpus));
  open_out(stats_path) << table;

  const std::string skipped_path = out_path(o.out, "skipped.tsv");
  {
    auto f = open_out(skipped_path);
    f << "#powercomm-skipped\t1\n";
    for (const SkippedThread& s : corpus.skipped)
      f << s.id << '\t' << s.reason << '\n';
  }
  for (const std::string& w : corpus.warnings)
    std::cerr << "warning: " << w << '\n';

  manifest.outputs = {{"corpus", corpus_path},
                      {"dominance", dominance_path},
                      {"splits", splits_path},
                      {"stats", stats_path},
                      {"skipped", skipped_path}};
  manifest.config = {{"skipped_threads", corpus.skipped.size()},
                     {"warnings", corpus.warnings.size()}};
  manifest.write();
  std::cout << table;
  if (!corpus.skipped.empty())
    std::cout << corpus.skipped.size() << " thread(s) skipped; see "
              << skipped_path << '\n';
  return 0;
}

// ------------------------------------------------------------------ tag --

struct TagOpts {
  std::string corpus, text, lexicons, out;
};

std::vector<std::string> thread_participants(const Thread& th) {
  std::set<std::string> ps;
  for (const Message& m : th.messages) {
    ps.insert(m.sender);
    for (const auto& r : m.to) ps.insert(r);
    for (const auto& r : m.cc) ps.insert(r);
  }
  return {ps.begin(), ps.end()};
}

int cmd_tag(const TagOpts& o) {
  if (o.text.empty() == o.corpus.empty())
    throw ValidationError("tag needs exactly one of --text or --corpus");
  const Lexicons lex = load_lexicons_opt(o.lexicons);
  const TextProcessor tp(lex);
  const BeliefTagger tagger(tp);

  if (!o.text.empty()) {
    const std::vector<Sentence> sentences = tp.analyze(o.text);
    const std::vector<PropositionalHead> heads = tagger.tag_sentences(sentences);
    std::cout << "sentence\ttoken\tsurface\tlemma\tlabel\trule\n";
    std::string rows;
    for (const PropositionalHead& h : heads) {
      const Token& t =
          sentences[static_cast<size_t>(h.sentence_ref)].tokens[static_cast<size_t>(h.token_index)];
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%d\t%d\t", h.sentence_ref, h.token_index);
      rows += buf + t.surface + '\t' + t.lemma + '\t' + to_string(h.label) +
              ('\t' + h.rule_fired) + '\n';
    }
    std::cout << rows;
    if (!o.out.empty()) {
      ensure_out_dir(o.out);
      ManifestWriter manifest("tag", o.out);
      const std::string tags_path = out_path(o.out, "text_tags.tsv");
      auto f = open_out(tags_path);
      f << "#powercomm-tags\t1\n";
      f << "sentence\ttoken\tsurface\tlemma\tlabel\trule\n" << rows;
      manifest.config = {{"text", o.text}};
      manifest.outputs = {{"tags", tags_path}};
      manifest.write();
    }
    return 0;
  }

  require_file(o.corpus, "ingest");
  if (o.out.empty()) throw ValidationError("tag --corpus needs --out");
  ensure_out_dir(o.out);
  ManifestWriter manifest("tag", o.out);
  manifest.inputs = {{"corpus", o.corpus}};
  if (!o.lexicons.empty()) manifest.inputs["lexicons"] = o.lexicons;

  const Corpus corpus = load_corpus(o.corpus);
  const std::string tags_path = out_path(o.out, "tags.tsv");
  const std::string counts_path = out_path(o.out, "belief_counts.tsv");
  auto tags_f = open_out(tags_path);
  tags_f << "#powercomm-tags\t1\n";
  tags_f << "thread_id\tmessage_id\tsentence\ttoken\tsurface\tlemma\tlabel\trule\n";
  auto counts_f = open_out(counts_path);
  counts_f << "#powercomm-belief-counts\t1\n";
  counts_f << "thread_id\tparticipant\tcb\tncb\trob\tna\tprop_hedges\t"
              "rel_hedges\ttokens\tdefined\n";

  std::int64_t total_heads = 0;
  for (const Thread& th : corpus.threads) {
    for (const std::string& p : thread_participants(th)) {
      std::vector<const Message*> own;
      for (const Message& m : th.messages)
        if (m.sender == p) own.push_back(&m);
      const BeliefTagger::TagResult res = tagger.tag_messages(own);
      counts_f << th.id << '\t' << p << '\t' << res.counts.cb << '\t'
               << res.counts.ncb << '\t' << res.counts.rob << '\t'
               << res.counts.na << '\t' << res.prop_hedges << '\t'
               << res.rel_hedges << '\t' << res.counts.token_count << '\t'
               << (res.counts.defined ? 1 : 0) << '\n';
      // Re-analyze per message so standoff records carry surfaces/lemmas.
      for (const Message* m : own) {
        const std::vector<Sentence> sentences = tp.analyze(m->body);
        for (const PropositionalHead& h : tagger.tag_sentences(sentences)) {
          const Token& t = sentences[static_cast<size_t>(h.sentence_ref)]
                               .tokens[static_cast<size_t>(h.token_index)];
          tags_f << th.id << '\t' << m->id << '\t' << h.sentence_ref << '\t'
                 << h.token_index << '\t' << t.surface << '\t' << t.lemma
                 << '\t' << to_string(h.label) << '\t' << h.rule_fired << '\n';
          ++total_heads;
        }
      }
    }
  }
  manifest.outputs = {{"tags", tags_path}, {"belief_counts", counts_path}};
  manifest.config = {{"heads", total_heads}};
  manifest.write();
  std::cout << "tagged " << total_heads << " propositional heads across "
            << corpus.threads.size() << " threads\n";
  return 0;
}

// ------------------------------------------------------------ featurize --

struct FeaturizeOpts {
  std::string corpus, dominance, splits, lexicons, out;
  std::string features = "all";
  int df_floor = 2;
};

struct FeaturizedData {
  std::array<std::vector<Instance>, 3> by_split;  // indexed by Split
  std::array<std::int64_t, 3> dropped{0, 0, 0};
  Vocabulary vocab;
};

FeaturizedData featurize_corpus(const Corpus& corpus, const Lexicons& lex,
                                const FeatureConfig& fcfg) {
  const TextProcessor tp(lex);
  const BeliefTagger tagger(tp);
  const FeatureExtractor fx(tagger, fcfg);
  FeaturizedData data;
  for (const Thread& th : corpus.threads) {
    const auto it = corpus.splits.find(th.id);
    const Split split = it == corpus.splits.end() ? Split::TRAIN : it->second;
    const std::vector<Ripp> ripps = extract_ripps(th, corpus.dominance, split);
    if (ripps.empty()) continue;
    const std::vector<AnalyzedMessage> analyzed = fx.analyze_thread(th);
    for (const Ripp& r : ripps) {
      const auto [f1, f2] = fx.extract_pair(th, analyzed, r);
      if (!f1.defined || !f2.defined) {
        ++data.dropped[static_cast<size_t>(r.split)];
        continue;
      }
      data.by_split[static_cast<size_t>(r.split)].push_back(
          make_instance(f1, f2, r));
    }
  }
  data.vocab =
      build_vocabulary(data.by_split[static_cast<size_t>(Split::TRAIN)],
                       fcfg.df_floor);
  return data;
}

struct FeaturizePaths {
  std::string train, dev, test, vocab;
};

FeaturizePaths write_featurized(const FeaturizedData& data,
                                const std::string& out_dir) {
  FeaturizePaths p;
  p.train = out_path(out_dir, "train.instances.tsv");
  p.dev = out_path(out_dir, "dev.instances.tsv");
  p.test = out_path(out_dir, "test.instances.tsv");
  p.vocab = out_path(out_dir, "vocab.tsv");
  save_instances(data.by_split[0], p.train);
  save_instances(data.by_split[1], p.dev);
  save_instances(data.by_split[2], p.test);
  save_vocabulary(data.vocab, p.vocab);
  return p;
}

FeatureConfig parse_features_flag(const std::string& spec, int df_floor) {
  FeatureConfig fcfg;
  try {
    fcfg = parse_feature_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (df_floor < 1) throw ValidationError("--df-floor must be >= 1");
  fcfg.df_floor = df_floor;
  return fcfg;
}

int cmd_featurize(const FeaturizeOpts& o) {
  require_file(o.corpus, "synth");
  require_file(o.dominance, "synth");
  if (!o.splits.empty()) require_file(o.splits, "synth");
  const FeatureConfig fcfg = parse_features_flag(o.features, o.df_floor);
  const Lexicons lex = load_lexicons_opt(o.lexicons);
  ensure_out_dir(o.out);
  ManifestWriter manifest("featurize", o.out);
  manifest.inputs = {{"corpus", o.corpus}, {"dominance", o.dominance}};
  if (!o.splits.empty()) manifest.inputs["splits"] = o.splits;
  if (!o.lexicons.empty()) manifest.inputs["lexicons"] = o.lexicons;

  const Corpus corpus = load_corpus(o.corpus, o.dominance, o.splits);
  const FeaturizedData data = featurize_corpus(corpus, lex, fcfg);
  const FeaturizePaths paths = write_featurized(data, o.out);

  manifest.config = {{"features", feature_spec_to_string(fcfg)},
                     {"df_floor", fcfg.df_floor},
                     {"train_instances", data.by_split[0].size()},
                     {"dev_instances", data.by_split[1].size()},
                     {"test_instances", data.by_split[2].size()},
                     {"dropped_undefined", data.dropped[0] + data.dropped[1] +
                                               data.dropped[2]},
                     {"vocabulary_size", data.vocab.index.size()}};
  manifest.outputs = {{"train", paths.train},
                      {"dev", paths.dev},
                      {"test", paths.test},
                      {"vocab", paths.vocab}};
  manifest.write();
  std::cout << "instances: train " << data.by_split[0].size() << ", dev "
            << data.by_split[1].size() << ", test " << data.by_split[2].size()
            << " (dropped "
            << data.dropped[0] + data.dropped[1] + data.dropped[2]
            << " with an undefined side); vocabulary "
            << data.vocab.index.size() << " features\n";
  return 0;
}

// ---------------------------------------------------------------- train --

struct TrainOpts {
  std::string instances;  // directory from featurize
  std::string corpus, dominance, splits, lexicons;
  std::string features = "all";
  int df_floor = 2;
  std::string out;
  double reg = 0.0;  // 0 = grid selection on dev
  int epochs = 30;
  std::uint64_t seed = 42;
};

int cmd_train(const TrainOpts& o) {
  ensure_out_dir(o.out);
  ManifestWriter manifest("train", o.out);
  manifest.seed = o.seed;

  std::vector<Instance> train_set, dev_set;
  Vocabulary vocab;
  if (!o.instances.empty()) {
    const std::string train_path =
        out_path(o.instances, "train.instances.tsv");
    const std::string dev_path = out_path(o.instances, "dev.instances.tsv");
    const std::string vocab_path = out_path(o.instances, "vocab.tsv");
    require_file(train_path, "featurize");
    require_file(vocab_path, "featurize");
    train_set = load_instances(train_path);
    vocab = load_vocabulary(vocab_path);
    if (fs::exists(dev_path)) dev_set = load_instances(dev_path);
    manifest.inputs = {{"train", train_path},
                       {"dev", dev_path},
                       {"vocab", vocab_path}};
  } else {
    if (o.corpus.empty() || o.dominance.empty())
      throw ValidationError(
          "train needs --instances (from featurize) or --corpus plus "
          "--dominance");
    require_file(o.corpus, "synth");
    require_file(o.dominance, "synth");
    const FeatureConfig fcfg = parse_features_flag(o.features, o.df_floor);
    const Lexicons lex = load_lexicons_opt(o.lexicons);
    const Corpus corpus = load_corpus(o.corpus, o.dominance, o.splits);
    const FeaturizedData data = featurize_corpus(corpus, lex, fcfg);
    const FeaturizePaths paths = write_featurized(data, o.out);
    train_set = data.by_split[0];
    dev_set = data.by_split[1];
    vocab = data.vocab;
    manifest.inputs = {{"corpus", o.corpus}, {"dominance", o.dominance}};
    manifest.config["features"] = feature_spec_to_string(fcfg);
    manifest.outputs = {{"train", paths.train},
                        {"dev", paths.dev},
                        {"test", paths.test},
                        {"vocab", paths.vocab}};
  }

  TrainConfig base;
  base.epochs = o.epochs;
  base.seed = o.seed;

  LinearModel model;
  ordered_json grid_json = ordered_json::array();
  try {
    if (o.reg > 0.0) {
      base.reg_strength = o.reg;
      model = train_svm(train_set, vocab, base);
    } else {
      if (dev_set.empty())
        throw ValidationError(
            "grid selection needs a dev split; pass --reg to train without "
            "one");
      const RegSelection sel =
          select_reg_strength(train_set, vocab, dev_set, base);
      for (const auto& [strength, acc] : sel.grid)
        grid_json.push_back({{"reg_strength", strength}, {"dev_accuracy", acc}});
      model = sel.model;
    }
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }

  const std::string model_path = out_path(o.out, "model.txt");
  save_model(model, model_path);
  manifest.config["reg_strength"] = model.config.reg_strength;
  manifest.config["epochs"] = model.config.epochs;
  manifest.config["loss"] = model.config.loss;
  if (!grid_json.empty()) manifest.config["grid"] = grid_json;
  manifest.outputs["model"] = model_path;
  manifest.write();

  std::cout << "trained on " << train_set.size() << " instances ("
            << vocab.index.size() << " features), reg_strength "
            << model.config.reg_strength;
  if (!dev_set.empty())
    std::cout << ", dev accuracy " << evaluate(model, dev_set).accuracy;
  std::cout << '\n';
  return 0;
}

// ----------------------------------------------------------------- eval --

struct EvalOpts {
  std::string model, instances;
  std::string compare, compare_instances;
  std::string out;
  int iterations = 10000;
  std::uint64_t seed = 7;
};

int cmd_eval(const EvalOpts& o) {
  require_file(o.model, "train");
  require_file(o.instances, "featurize");
  if (!o.compare.empty()) {
    require_file(o.compare, "train");
    if (o.compare_instances.empty())
      throw ValidationError("--compare needs --compare-instances");
    require_file(o.compare_instances, "featurize");
  }
  ensure_out_dir(o.out);
  ManifestWriter manifest("eval", o.out);
  manifest.seed = o.seed;
  manifest.inputs = {{"model", o.model}, {"instances", o.instances}};

  const LinearModel model = load_model(o.model);
  const std::vector<Instance> instances = load_instances(o.instances);
  if (instances.empty())
    throw ValidationError("no instances to evaluate in " + o.instances);
  const EvalResult res = evaluate(model, instances);

  const std::string eval_path = out_path(o.out, "eval.tsv");
  auto f = open_out(eval_path);
  char buf[64];
  f << "#powercomm-eval\t1\n";
  f << "model\t" << o.model << '\n';
  f << "instances\t" << o.instances << '\n';
  std::snprintf(buf, sizeof(buf), "%.6g", res.accuracy);
  f << "accuracy\t" << buf << '\n';
  f << "correct\t" << res.correct << '\n';
  f << "total\t" << res.total << '\n';
  std::cout << "accuracy " << res.accuracy << " (" << res.correct << "/"
            << res.total << ")\n";

  if (!o.compare.empty()) {
    const LinearModel model2 = load_model(o.compare);
    const std::vector<Instance> instances2 =
        load_instances(o.compare_instances);
    if (instances2.size() != instances.size())
      throw ValidationError("evaluation sets are not aligned: " +
                            std::to_string(instances.size()) + " vs " +
                            std::to_string(instances2.size()) + " instances");
    for (size_t i = 0; i < instances.size(); ++i)
      if (instances[i].id != instances2[i].id)
        throw ValidationError(
            "evaluation sets are not aligned at row " + std::to_string(i) +
            ": " + instances[i].id + " vs " + instances2[i].id);
    const EvalResult res2 = evaluate(model2, instances2);
    RandomizationResult rnd;
    try {
      rnd = approx_randomization(res.correctness, res2.correctness,
                                 o.iterations, o.seed);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
    f << "compare_model\t" << o.compare << '\n';
    f << "compare_instances\t" << o.compare_instances << '\n';
    std::snprintf(buf, sizeof(buf), "%.6g", res2.accuracy);
    f << "compare_accuracy\t" << buf << '\n';
    std::snprintf(buf, sizeof(buf), "%.6g", rnd.p_value);
    f << "randomization_p\t" << buf << '\n';
    f << "iterations\t" << rnd.iterations << '\n';
    f << "seed\t" << rnd.seed << '\n';
    std::snprintf(buf, sizeof(buf), "%.6g", rnd.observed_diff);
    f << "observed_diff\t" << buf << '\n';
    manifest.inputs["compare_model"] = o.compare;
    manifest.inputs["compare_instances"] = o.compare_instances;
    manifest.config = {{"iterations", o.iterations}};
    std::cout << "compare accuracy " << res2.accuracy << " ("
              << res2.correct << "/" << res2.total << "), randomization p "
              << rnd.p_value << " at R=" << rnd.iterations << '\n';
  }

  manifest.outputs = {{"eval", eval_path}};
  manifest.write();
  return 0;
}

// -------------------------------------------------------------- analyze --

struct AnalyzeOpts {
  std::string corpus, dominance, splits, lexicons, out;
};

int cmd_analyze(const AnalyzeOpts& o) {
  require_file(o.corpus, "synth");
  require_file(o.dominance, "synth");
  if (!o.splits.empty()) require_file(o.splits, "synth");
  const Lexicons lex = load_lexicons_opt(o.lexicons);
  ensure_out_dir(o.out);
  ManifestWriter manifest("analyze", o.out);
  manifest.inputs = {{"corpus", o.corpus}, {"dominance", o.dominance}};
  if (!o.splits.empty()) manifest.inputs["splits"] = o.splits;
  if (!o.lexicons.empty()) manifest.inputs["lexicons"] = o.lexicons;

  const Corpus corpus = load_corpus(o.corpus, o.dominance, o.splits);
  const TextProcessor tp(lex);
  const BeliefTagger tagger(tp);
  const std::vector<ParticipantBelief> rows = participant_rows(corpus, tagger);
  if (rows.empty())
    throw ValidationError(
        "no related interacting participant pairs found; check the dominance "
        "file");
  std::vector<HypothesisRow> suite;
  try {
    suite = run_hypothesis_suite(rows);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }

  const std::string report_path = out_path(o.out, "hypothesis_report.tsv");
  const std::string chart_path = out_path(o.out, "chart_data.tsv");
  const std::string report = format_hypothesis_report(suite);
  open_out(report_path) << report;
  open_out(chart_path) << format_chart_data(suite);

  manifest.config = {{"participant_rows", rows.size()}};
  manifest.outputs = {{"report", report_path}, {"chart_data", chart_path}};
  manifest.write();
  std::cout << report;
  return 0;
}

// -------------------------------------------------------------- weights --

struct WeightsOpts {
  std::string model, out;
  int top = 10;
};

int cmd_weights(const WeightsOpts& o) {
  require_file(o.model, "train");
  if (o.top < 1) throw ValidationError("--top must be >= 1");
  ensure_out_dir(o.out);
  ManifestWriter manifest("weights", o.out);
  manifest.inputs = {{"model", o.model}};

  const LinearModel model = load_model(o.model);
  std::vector<WeightVariationRow> rows;
  try {
    rows = weight_variation_report(model, o.top);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const std::string text = format_weight_variation(rows);
  const std::string path = out_path(o.out, "weight_variation.tsv");
  open_out(path) << text;

  manifest.config = {{"top", o.top}};
  manifest.outputs = {{"weight_variation", path}};
  manifest.write();
  std::cout << text;
  return 0;
}

}  // namespace

const char* tool_version() { return kToolVersion; }

std::vector<ParticipantBelief> participant_rows(const Corpus& corpus,
                                                const BeliefTagger& tagger) {
  std::vector<ParticipantBelief> rows;
  for (const Thread& th : corpus.threads) {
    const auto it = corpus.splits.find(th.id);
    const Split split = it == corpus.splits.end() ? Split::TRAIN : it->second;
    const std::vector<Ripp> ripps = extract_ripps(th, corpus.dominance, split);
    if (ripps.empty()) continue;
    // One row per (thread, participant): a participant involved in several
    // pairs still contributes a single observation, so rows stay independent
    // and no side is over-weighted. Participants that sit on both sides of
    // the hierarchy within the thread have no single power value and are
    // skipped.
    std::set<std::string> superiors, subordinates;
    for (const Ripp& r : ripps) {
      const bool p1_sup = r.gold == Gold::P1_SUPERIOR;
      superiors.insert(p1_sup ? r.p1 : r.p2);
      subordinates.insert(p1_sup ? r.p2 : r.p1);
    }
    for (const auto* group : {&superiors, &subordinates}) {
      const bool is_sup = group == &superiors;
      for (const std::string& p : *group) {
        if (superiors.count(p) && subordinates.count(p)) continue;
        std::vector<const Message*> own;
        for (const Message& m : th.messages)
          if (m.sender == p) own.push_back(&m);
        const BeliefCounts c = tagger.tag_messages(own).counts;
        if (!c.defined) continue;  // participants who sent nothing are excluded
        ParticipantBelief row;
        row.cb = static_cast<double>(c.cb);
        row.ncb = static_cast<double>(c.ncb);
        row.rob = static_cast<double>(c.rob);
        row.na = static_cast<double>(c.na);
        row.token_count = static_cast<double>(c.token_count);
        row.power = is_sup ? 1 : 0;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"author-commitment analysis and power-prediction toolkit"};
  app.require_subcommand(1);

  SynthOpts synth_o;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate a seeded synthetic corpus with planted effects");
  synth->add_option("--config", synth_o.config,
                    "preset (default|null|contrast) or JSON config path");
  synth->add_option("--seed", synth_o.seed, "generator seed");
  synth->add_option("--threads", synth_o.threads,
                    "override the number of threads to generate");
  synth->add_option("--out", synth_o.out, "output directory")->required();

  IngestOpts ingest_o;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "validate and normalize a thread corpus");
  ingest->add_option("--corpus", ingest_o.corpus, "thread corpus (JSONL)")
      ->required();
  ingest->add_option("--dominance", ingest_o.dominance,
                     "dominance tuples (TSV)")
      ->required();
  ingest->add_option("--splits", ingest_o.splits, "split assignments (TSV)");
  ingest->add_option("--out", ingest_o.out, "output directory")->required();

  TagOpts tag_o;
  CLI::App* tag = app.add_subcommand(
      "tag", "commitment-tag a corpus or a single text");
  tag->add_option("--corpus", tag_o.corpus, "thread corpus (JSONL)");
  tag->add_option("--text", tag_o.text, "tag one text and print records");
  tag->add_option("--lexicons", tag_o.lexicons, "lexicon directory override");
  tag->add_option("--out", tag_o.out, "output directory");

  FeaturizeOpts feat_o;
  CLI::App* feat = app.add_subcommand(
      "featurize", "extract per-pair instances and a train vocabulary");
  feat->add_option("--corpus", feat_o.corpus, "thread corpus (JSONL)")
      ->required();
  feat->add_option("--dominance", feat_o.dominance, "dominance tuples (TSV)")
      ->required();
  feat->add_option("--splits", feat_o.splits, "split assignments (TSV)");
  feat->add_option("--lexicons", feat_o.lexicons, "lexicon directory override");
  feat->add_option("--features", feat_o.features,
                   "feature families, e.g. all, baseline, LNapnd+PN+MN");
  feat->add_option("--df-floor", feat_o.df_floor,
                   "minimum train document frequency for n-gram features");
  feat->add_option("--out", feat_o.out, "output directory")->required();

  TrainOpts train_o;
  CLI::App* train = app.add_subcommand("train", "train the linear model");
  train->add_option("--instances", train_o.instances,
                    "featurize output directory");
  train->add_option("--corpus", train_o.corpus,
                    "thread corpus (featurizes in-process)");
  train->add_option("--dominance", train_o.dominance, "dominance tuples (TSV)");
  train->add_option("--splits", train_o.splits, "split assignments (TSV)");
  train->add_option("--lexicons", train_o.lexicons,
                    "lexicon directory override");
  train->add_option("--features", train_o.features,
                    "feature families when featurizing in-process");
  train->add_option("--df-floor", train_o.df_floor,
                    "minimum train document frequency for n-gram features");
  train->add_option("--reg", train_o.reg,
                    "regularization strength (0 = grid-select on dev)");
  train->add_option("--epochs", train_o.epochs, "training epochs");
  train->add_option("--seed", train_o.seed, "shuffle seed");
  train->add_option("--out", train_o.out, "output directory")->required();

  EvalOpts eval_o;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a trained model");
  eval->add_option("--model", eval_o.model, "model file")->required();
  eval->add_option("--instances", eval_o.instances, "instances file")
      ->required();
  eval->add_option("--compare", eval_o.compare,
                   "second model for paired comparison");
  eval->add_option("--compare-instances", eval_o.compare_instances,
                   "instances file matching the second model's features");
  eval->add_option("--iterations", eval_o.iterations,
                   "randomization iterations");
  eval->add_option("--seed", eval_o.seed, "randomization seed");
  eval->add_option("--out", eval_o.out, "output directory")->required();

  AnalyzeOpts analyze_o;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "run the commitment-power hypothesis suite");
  analyze->add_option("--corpus", analyze_o.corpus, "thread corpus (JSONL)")
      ->required();
  analyze->add_option("--dominance", analyze_o.dominance,
                      "dominance tuples (TSV)")
      ->required();
  analyze->add_option("--splits", analyze_o.splits, "split assignments (TSV)");
  analyze->add_option("--lexicons", analyze_o.lexicons,
                      "lexicon directory override");
  analyze->add_option("--out", analyze_o.out, "output directory")->required();

  WeightsOpts weights_o;
  CLI::App* weights = app.add_subcommand(
      "weights", "report weight variation across commitment versions");
  weights->add_option("--model", weights_o.model, "model file")->required();
  weights->add_option("--top", weights_o.top, "rows to report");
  weights->add_option("--out", weights_o.out, "output directory")->required();

  // CLI11's vector overload consumes arguments from the back.
  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_o);
    if (ingest->parsed()) return cmd_ingest(ingest_o);
    if (tag->parsed()) return cmd_tag(tag_o);
    if (feat->parsed()) return cmd_featurize(feat_o);
    if (train->parsed()) return cmd_train(train_o);
    if (eval->parsed()) return cmd_eval(eval_o);
    if (analyze->parsed()) return cmd_analyze(analyze_o);
    if (weights->parsed()) return cmd_weights(weights_o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
  std::cerr << "error: no subcommand given\n";
  return 1;
}

}  // namespace powercomm
