// Acceptance gate: one self-checking scenario per release criterion, each
// printed as a PASS/FAIL line. Exits nonzero when any scenario fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "powercomm/belief.hpp"
#include "powercomm/corpus.hpp"
#include "powercomm/features.hpp"
#include "powercomm/lexicon.hpp"
#include "powercomm/model.hpp"
#include "powercomm/pipeline.hpp"
#include "powercomm/stats.hpp"
#include "powercomm/synth.hpp"
#include "powercomm/textproc.hpp"

using namespace powercomm;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const TextProcessor& proc() {
  static const Lexicons lex = Lexicons::builtin();
  static const TextProcessor tp(lex);
  return tp;
}

const BeliefTagger& tagger() {
  static const BeliefTagger bt(proc());
  return bt;
}

// Runs the CLI entry point with stdout/stderr captured.
int run_quiet(const std::vector<std::string>& args) {
  std::stringstream out_cap, err_cap;
  std::streambuf* o = std::cout.rdbuf(out_cap.rdbuf());
  std::streambuf* e = std::cerr.rdbuf(err_cap.rdbuf());
  const int rc = run(args);
  std::cout.rdbuf(o);
  std::cerr.rdbuf(e);
  return rc;
}

struct TempDir {
  fs::path root;
  explicit TempDir(const std::string& tag) {
    root = fs::temp_directory_path() / ("powercomm-accept-" + tag);
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  std::string path(const std::string& name) const {
    return (root / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

char fmt_buf[256];
template <class... Args>
std::string strf(const char* f, Args... args) {
  std::snprintf(fmt_buf, sizeof(fmt_buf), f, args...);
  return fmt_buf;
}

// ------------------------------------------------------------ criterion 1

Check criterion1_anchor_clauses() {
  struct Anchor {
    const char* text;
    const char* lemma;
    BeliefLabel want;
  };
  const Anchor anchors[] = {
      {"John will submit the report.", "submit", BeliefLabel::CB},
      {"I know that John is capable.", "capable", BeliefLabel::CB},
      {"John may submit the report.", "submit", BeliefLabel::NCB},
      {"I guess John is capable.", "capable", BeliefLabel::NCB},
      {"Sara says John will submit the report.", "submit", BeliefLabel::ROB},
      {"Sara thinks John may be capable.", "capable", BeliefLabel::ROB},
      {"I need John to submit the report.", "submit", BeliefLabel::NA},
      {"Will John be capable?", "capable", BeliefLabel::NA},
      {"I need the report by tomorrow.", "need", BeliefLabel::CB},
      {"If I need the report, I will let you know.", "need", BeliefLabel::NA},
  };
  const auto t0 = Clock::now();
  int correct = 0;
  std::string misses;
  for (const Anchor& a : anchors) {
    bool found = false;
    for (const Sentence& s : proc().analyze(a.text)) {
      for (int h : tagger().find_heads(s)) {
        if (s.tokens[static_cast<size_t>(h)].lemma != a.lemma) continue;
        found = true;
        if (tagger().classify_head(s, h) == a.want) {
          ++correct;
        } else {
          misses += std::string(" [") + a.text + " -> " +
                    to_string(tagger().classify_head(s, h)) + "]";
        }
      }
    }
    if (!found) misses += std::string(" [") + a.text + " -> head missing]";
  }
  const double dt = seconds_since(t0);
  Check c;
  c.ok = correct == 10 && dt < 1.0;
  c.detail = strf("%d/10 anchor clauses in %.3fs", correct, dt) + misses;
  return c;
}

// ------------------------------------------------------------ criterion 2

Check criterion2_sign_pattern() {
  const auto t0 = Clock::now();
  SynthConfig cfg = default_synth_config();
  cfg.n_threads = 2000;
  const SynthResult res = generate_corpus(cfg);
  const std::vector<ParticipantBelief> rows =
      participant_rows(res.corpus, tagger());
  const std::vector<HypothesisRow> suite = run_hypothesis_suite(rows);
  const double dt = seconds_since(t0);
  if (suite.size() != 4) return {false, "expected 4 hypothesis rows"};
  const HypothesisRow& cb = suite[0];
  const HypothesisRow& ncb = suite[1];
  const HypothesisRow& rob = suite[2];
  const HypothesisRow& na = suite[3];
  Check c;
  const bool signs = ncb.b < 0 && rob.b < 0 && na.b > 0;
  const bool sig = ncb.p_adjusted < 0.001 && rob.p_adjusted < 0.001 &&
                   na.p_adjusted < 0.001;
  const bool cb_null = cb.p > 0.05;
  const bool rd_ok = std::abs(ncb.rd_percent - 48.0) <= 10.0 &&
                     std::abs(rob.rd_percent - 65.3) <= 10.0;
  c.ok = signs && sig && cb_null && rd_ok && dt < 120.0;
  c.detail = strf(
      "ncb b=%.4f p*=%.2e rd=%.1f; rob b=%.4f p*=%.2e rd=%.1f; na b=%.4f "
      "p*=%.2e; cb p=%.3f; %.1fs",
      ncb.b, ncb.p_adjusted, ncb.rd_percent, rob.b, rob.p_adjusted,
      rob.rd_percent, na.b, na.p_adjusted, cb.p, dt);
  return c;
}

// ------------------------------------------------------------ criterion 3

Check criterion3_null_calibration() {
  int accepted_runs = 0;
  for (int seed = 1; seed <= 100; ++seed) {
    SynthConfig cfg = null_synth_config();
    cfg.seed = static_cast<std::uint64_t>(seed);
    const SynthResult res = generate_corpus(cfg);
    const std::vector<HypothesisRow> suite =
        run_hypothesis_suite(participant_rows(res.corpus, tagger()));
    bool all_null = true;
    for (const HypothesisRow& row : suite)
      if (row.p_adjusted <= 0.05) all_null = false;
    if (all_null) ++accepted_runs;
  }
  Check c;
  c.ok = accepted_runs >= 90;
  c.detail = strf("all four corrected tests accepted the null in %d/100 runs",
                  accepted_runs);
  return c;
}

// --------------------------------------------------- criteria 4 and 8 ----

struct SplitSets {
  std::array<std::vector<Instance>, 3> by_split;
  Vocabulary vocab;
};

SplitSets featurize_all(const Corpus& corpus, const FeatureConfig& fcfg) {
  const FeatureExtractor fx(tagger(), fcfg);
  SplitSets out;
  for (const Thread& th : corpus.threads) {
    const auto it = corpus.splits.find(th.id);
    const Split split = it == corpus.splits.end() ? Split::TRAIN : it->second;
    const std::vector<Ripp> ripps = extract_ripps(th, corpus.dominance, split);
    if (ripps.empty()) continue;
    const auto analyzed = fx.analyze_thread(th);
    for (const Ripp& r : ripps) {
      const auto [f1, f2] = fx.extract_pair(th, analyzed, r);
      if (!f1.defined || !f2.defined) continue;
      out.by_split[static_cast<size_t>(r.split)].push_back(
          make_instance(f1, f2, r));
    }
  }
  out.vocab = build_vocabulary(out.by_split[0], fcfg.df_floor);
  return out;
}

struct ContrastOutcome {
  Check gain;
  Check weights;
};

ContrastOutcome contrast_experiment() {
  const auto t0 = Clock::now();
  SynthConfig cfg = default_synth_config();
  cfg.n_threads = 1000;
  const SynthResult res = generate_belief_contrast_corpus(cfg);

  const SplitSets plain = featurize_all(res.corpus, parse_feature_spec("LN"));
  const SplitSets apnd =
      featurize_all(res.corpus, parse_feature_spec("LNapnd"));

  TrainConfig tc;
  tc.reg_strength = 0.01;
  tc.epochs = 30;
  tc.seed = 42;
  const LinearModel m_plain = train_svm(plain.by_split[0], plain.vocab, tc);
  const LinearModel m_apnd = train_svm(apnd.by_split[0], apnd.vocab, tc);

  const auto& test_plain = plain.by_split[static_cast<size_t>(Split::TEST)];
  const auto& test_apnd = apnd.by_split[static_cast<size_t>(Split::TEST)];
  ContrastOutcome out;
  if (test_plain.size() != test_apnd.size() || test_plain.empty()) {
    out.gain = {false, "test splits not aligned"};
    out.weights = {false, "test splits not aligned"};
    return out;
  }
  for (size_t i = 0; i < test_plain.size(); ++i)
    if (test_plain[i].id != test_apnd[i].id) {
      out.gain = {false, "test ids not aligned"};
      out.weights = out.gain;
      return out;
    }
  const EvalResult e_plain = evaluate(m_plain, test_plain);
  const EvalResult e_apnd = evaluate(m_apnd, test_apnd);
  const RandomizationResult rnd =
      approx_randomization(e_apnd.correctness, e_plain.correctness, 10000, 7);
  const double dt = seconds_since(t0);

  const double gain_points = 100.0 * (e_apnd.accuracy - e_plain.accuracy);
  out.gain.ok = gain_points >= 20.0 && rnd.p_value < 0.05 && dt < 120.0;
  out.gain.detail = strf(
      "append %.1f%% vs plain %.1f%% (gain %.1f points), randomization "
      "p=%.4g at R=%d, %.1fs",
      100.0 * e_apnd.accuracy, 100.0 * e_plain.accuracy, gain_points,
      rnd.p_value, rnd.iterations, dt);

  // Criterion 8: the contrast lemma shows up in the top-5 stddev rows with
  // opposite-signed CB and NA version weights.
  const std::set<std::string> contrast_lemmas = {"need", "want", "expect",
                                                 "plan"};
  std::vector<WeightVariationRow> rows;
  try {
    rows = weight_variation_report(m_apnd, 5);
  } catch (const std::exception& e) {
    out.weights = {false, std::string("weight report failed: ") + e.what()};
    return out;
  }
  bool found = false;
  std::string report;
  for (const WeightVariationRow& r : rows) {
    report += " " + r.head_lemma;
    if (!contrast_lemmas.count(r.head_lemma)) continue;
    const auto cb = r.version_weights.find(BeliefLabel::CB);
    const auto na = r.version_weights.find(BeliefLabel::NA);
    if (cb == r.version_weights.end() || na == r.version_weights.end())
      continue;
    if (cb->second * na->second < 0.0) {
      found = true;
      report += strf("(CB=%.3f,NA=%.3f)", cb->second, na->second);
    }
  }
  out.weights.ok = found;
  out.weights.detail = "top lemmas:" + report;
  return out;
}

// ------------------------------------------------------------ criterion 5

// Independent normal-equations OLS solved in long double via the adjugate.
bool ols_oracle(const std::vector<double>& y, const std::vector<int>& power,
                const std::vector<double>& tokens, double* b, double* t) {
  const size_t n = y.size();
  long double xtx[3][3] = {};
  long double xty[3] = {};
  for (size_t i = 0; i < n; ++i) {
    const long double row[3] = {1.0L, static_cast<long double>(power[i]),
                                static_cast<long double>(tokens[i])};
    for (int a = 0; a < 3; ++a) {
      xty[a] += row[a] * y[i];
      for (int c = 0; c < 3; ++c) xtx[a][c] += row[a] * row[c];
    }
  }
  const long double det =
      xtx[0][0] * (xtx[1][1] * xtx[2][2] - xtx[1][2] * xtx[2][1]) -
      xtx[0][1] * (xtx[1][0] * xtx[2][2] - xtx[1][2] * xtx[2][0]) +
      xtx[0][2] * (xtx[1][0] * xtx[2][1] - xtx[1][1] * xtx[2][0]);
  if (std::abs(static_cast<double>(det)) < 1e-12) return false;
  long double inv[3][3];
  inv[0][0] = (xtx[1][1] * xtx[2][2] - xtx[1][2] * xtx[2][1]) / det;
  inv[0][1] = -(xtx[0][1] * xtx[2][2] - xtx[0][2] * xtx[2][1]) / det;
  inv[0][2] = (xtx[0][1] * xtx[1][2] - xtx[0][2] * xtx[1][1]) / det;
  inv[1][0] = -(xtx[1][0] * xtx[2][2] - xtx[1][2] * xtx[2][0]) / det;
  inv[1][1] = (xtx[0][0] * xtx[2][2] - xtx[0][2] * xtx[2][0]) / det;
  inv[1][2] = -(xtx[0][0] * xtx[1][2] - xtx[0][2] * xtx[1][0]) / det;
  inv[2][0] = (xtx[1][0] * xtx[2][1] - xtx[1][1] * xtx[2][0]) / det;
  inv[2][1] = -(xtx[0][0] * xtx[2][1] - xtx[0][1] * xtx[2][0]) / det;
  inv[2][2] = (xtx[0][0] * xtx[1][1] - xtx[0][1] * xtx[1][0]) / det;
  long double beta[3] = {};
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) beta[a] += inv[a][c] * xty[c];
  long double rss = 0;
  for (size_t i = 0; i < n; ++i) {
    const long double fit = beta[0] + beta[1] * power[i] + beta[2] * tokens[i];
    rss += (y[i] - fit) * (y[i] - fit);
  }
  const long double df = static_cast<long double>(n) - 3.0L;
  const long double se = sqrtl(rss / df * inv[1][1]);
  *b = static_cast<double>(beta[1]);
  *t = static_cast<double>(beta[1] / se);
  return true;
}

// Independent IRLS logistic fit in long double.
bool irls_oracle(const std::vector<int>& y, const std::vector<int>& x,
                 double* b, double* z) {
  const size_t n = y.size();
  long double b0 = 0.0L, b1 = 0.0L;
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    long double s00 = 0, s01 = 0, s11 = 0, g0 = 0, g1 = 0;
    for (size_t i = 0; i < n; ++i) {
      const long double mu = 1.0L / (1.0L + expl(-(b0 + b1 * x[i])));
      const long double w = mu * (1.0L - mu);
      s00 += w;
      s01 += w * x[i];
      s11 += w * x[i] * x[i];
      g0 += y[i] - mu;
      g1 += (y[i] - mu) * x[i];
    }
    const long double det = s00 * s11 - s01 * s01;
    if (std::abs(static_cast<double>(det)) < 1e-30) return false;
    const long double d0 = (s11 * g0 - s01 * g1) / det;
    const long double d1 = (s00 * g1 - s01 * g0) / det;
    b0 += d0;
    b1 += d1;
    if (fabsl(d0) < 1e-13L && fabsl(d1) < 1e-13L) {
      converged = true;
      break;
    }
  }
  if (!converged) return false;
  long double s00 = 0, s01 = 0, s11 = 0;
  for (size_t i = 0; i < n; ++i) {
    const long double mu = 1.0L / (1.0L + expl(-(b0 + b1 * x[i])));
    const long double w = mu * (1.0L - mu);
    s00 += w;
    s01 += w * x[i];
    s11 += w * x[i] * x[i];
  }
  const long double det = s00 * s11 - s01 * s01;
  *b = static_cast<double>(b1);
  *z = static_cast<double>(b1 / sqrtl(s00 / det));
  return true;
}

Check criterion5_statistical_oracles() {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> utok(50.0, 500.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  double max_dols = 0.0;
  for (int d = 0; d < 50; ++d) {
    const int n = 20 + static_cast<int>(gen() % 41);
    std::vector<double> y, tokens;
    std::vector<int> power;
    for (int i = 0; i < n; ++i) {
      power.push_back(i % 2);
      tokens.push_back(utok(gen));
      y.push_back(0.5 + 0.8 * power.back() + 0.01 * tokens.back() +
                  noise(gen));
    }
    double ob = 0, ot = 0;
    if (!ols_oracle(y, power, tokens, &ob, &ot))
      return {false, "ols oracle hit a degenerate design"};
    const RegressionResult lib = ols_power_regression(y, power, tokens);
    max_dols = std::max(max_dols, std::abs(lib.b - ob));
    max_dols = std::max(max_dols, std::abs(lib.t - ot));
  }
  const bool ols_ok = max_dols < 1e-9;

  std::mt19937 gen2(77);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double max_dlog = 0.0;
  bool logistic_ok = true;
  for (int d = 0; d < 10; ++d) {
    std::vector<int> y, x;
    for (int i = 0; i < 300; ++i) {
      x.push_back(static_cast<int>(gen2() % 2));
      const double p = 1.0 / (1.0 + std::exp(-(-0.3 + 0.8 * x.back())));
      y.push_back(u01(gen2) < p ? 1 : 0);
    }
    double ob = 0, oz = 0;
    if (!irls_oracle(y, x, &ob, &oz)) {
      logistic_ok = false;
      break;
    }
    const RegressionResult lib = logistic_regression(y, x);
    max_dlog = std::max(max_dlog, std::abs(lib.b - ob));
    max_dlog = std::max(max_dlog, std::abs(lib.t - oz));
  }
  logistic_ok = logistic_ok && max_dlog < 1e-6;

  // All-correct vs all-wrong, n=20: the exact paired-swap null probability
  // of an absolute difference >= 1 is 2/2^20.
  std::vector<int> all_correct(20, 1), all_wrong(20, 0);
  const RandomizationResult rnd =
      approx_randomization(all_correct, all_wrong, 10000, 99);
  const double exact = 2.0 / 1048576.0;
  const bool rand_ok = std::abs(rnd.p_value - exact) <= 0.01;

  Check c;
  c.ok = ols_ok && logistic_ok && rand_ok;
  c.detail = strf(
      "ols max|delta|=%.2e, logistic max|delta|=%.2e, randomization "
      "p=%.4g vs exact %.4g",
      max_dols, max_dlog, rnd.p_value, exact);
  return c;
}

// ------------------------------------------------------------ criterion 6

std::vector<BeliefLabel> random_gold(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<BeliefLabel> gold;
  gold.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double r = u(g);
    if (r < 0.60) gold.push_back(BeliefLabel::CB);
    else if (r < 0.70) gold.push_back(BeliefLabel::NCB);
    else if (r < 0.78) gold.push_back(BeliefLabel::ROB);
    else gold.push_back(BeliefLabel::NA);
  }
  return gold;
}

BeliefLabel corrupt(std::mt19937_64& g, BeliefLabel l) {
  const BeliefLabel all[4] = {BeliefLabel::CB, BeliefLabel::NCB,
                              BeliefLabel::ROB, BeliefLabel::NA};
  BeliefLabel out = l;
  while (out == l) out = all[g() % 4];
  return out;
}

Check criterion6_bias_audit() {
  const int n = 2000;
  int all_accept = 0;
  for (int trial = 1; trial <= 100; ++trial) {
    std::mt19937_64 g(static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<BeliefLabel> gold = random_gold(g, n);
    std::vector<BeliefLabel> pred = gold;
    std::vector<int> power;
    for (int i = 0; i < n; ++i) {
      power.push_back(g() % 2 ? 1 : 0);
      if (u(g) < 0.10) pred[static_cast<size_t>(i)] = corrupt(g, gold[static_cast<size_t>(i)]);
    }
    const std::vector<BiasAuditResult> audit = bias_audit(gold, pred, power);
    bool ok = audit.size() == 8;
    for (const BiasAuditResult& r : audit) ok = ok && r.null_accepted;
    if (ok) ++all_accept;
  }

  int rejected = 0;
  for (int trial = 1; trial <= 100; ++trial) {
    std::mt19937_64 g(1000 + static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<BeliefLabel> gold = random_gold(g, n);
    std::vector<BeliefLabel> pred = gold;
    std::vector<int> power;
    for (int i = 0; i < n; ++i) {
      power.push_back(g() % 2 ? 1 : 0);
      if (power.back() == 0 && u(g) < 0.15)
        pred[static_cast<size_t>(i)] = corrupt(g, gold[static_cast<size_t>(i)]);
    }
    const std::vector<BiasAuditResult> audit = bias_audit(gold, pred, power);
    bool any_reject = false;
    for (const BiasAuditResult& r : audit)
      if (!r.null_accepted) any_reject = true;
    if (any_reject) ++rejected;
  }

  Check c;
  c.ok = all_accept >= 90 && rejected >= 90;
  c.detail = strf(
      "power-independent errors: all 8 tests accepted in %d/100 trials; "
      "subordinate-only errors: >=1 rejection in %d/100 trials",
      all_accept, rejected);
  return c;
}

// ------------------------------------------------------------ criterion 7

Check criterion7_determinism() {
  TempDir tmp("det");
  const auto runs = [&](const std::string& suffix)
      -> std::map<std::string, std::vector<std::string>> {
    // command name -> args; outputs land in <command><suffix>.
    const std::string synth_dir = tmp.path("synth" + suffix);
    const std::string base = tmp.path("synth1");  // inputs always from run 1
    std::map<std::string, std::vector<std::string>> cmds;
    cmds["synth"] = {"synth", "--config", "default", "--threads", "60",
                     "--seed", "11", "--out", synth_dir};
    cmds["ingest"] = {"ingest", "--corpus", base + "/corpus.jsonl",
                      "--dominance", base + "/dominance.tsv", "--splits",
                      base + "/splits.tsv", "--out", tmp.path("ingest" + suffix)};
    cmds["tag"] = {"tag", "--corpus", base + "/corpus.jsonl", "--out",
                   tmp.path("tag" + suffix)};
    cmds["featurize"] = {"featurize", "--corpus", base + "/corpus.jsonl",
                         "--dominance", base + "/dominance.tsv", "--splits",
                         base + "/splits.tsv", "--features", "LNapnd",
                         "--out", tmp.path("featurize" + suffix)};
    cmds["train"] = {"train", "--instances", tmp.path("featurize1"), "--reg",
                     "0.05", "--epochs", "8", "--seed", "5", "--out",
                     tmp.path("train" + suffix)};
    cmds["eval"] = {"eval", "--model", tmp.path("train1") + "/model.txt",
                    "--instances",
                    tmp.path("featurize1") + "/test.instances.tsv", "--out",
                    tmp.path("eval" + suffix)};
    cmds["analyze"] = {"analyze", "--corpus", base + "/corpus.jsonl",
                       "--dominance", base + "/dominance.tsv", "--out",
                       tmp.path("analyze" + suffix)};
    cmds["weights"] = {"weights", "--model",
                       tmp.path("train1") + "/model.txt", "--top", "5",
                       "--out", tmp.path("weights" + suffix)};
    return cmds;
  };

  const char* order[] = {"synth",  "ingest", "tag",     "featurize",
                         "train",  "eval",   "analyze", "weights"};
  const auto first = runs("1");
  for (const char* cmd : order)
    if (run_quiet(first.at(cmd)) != 0)
      return {false, std::string("first run of `") + cmd + "` failed"};
  const auto second = runs("2");
  for (const char* cmd : order)
    if (run_quiet(second.at(cmd)) != 0)
      return {false, std::string("second run of `") + cmd + "` failed"};

  int compared = 0;
  for (const char* cmd : order) {
    const fs::path dir1 = tmp.path(std::string(cmd) + "1");
    const fs::path dir2 = tmp.path(std::string(cmd) + "2");
    for (const auto& entry : fs::directory_iterator(dir1)) {
      const std::string name = entry.path().filename().string();
      if (name.size() > 14 &&
          name.substr(name.size() - 14) == ".manifest.json")
        continue;  // manifests carry wall-clock timing and output paths
      if (!fs::exists(dir2 / name))
        return {false, std::string(cmd) + " rerun missing artifact " + name};
      if (slurp(entry.path().string()) != slurp((dir2 / name).string()))
        return {false,
                std::string(cmd) + " artifact " + name + " differs on rerun"};
      ++compared;
    }
  }
  return {true, strf("%d artifacts byte-identical across reruns of all 8 "
                     "commands",
                     compared)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Check result;
  };
  std::vector<Criterion> results;

  ContrastOutcome contrast;
  try {
    results.push_back({"criterion-1 anchor-clause fidelity",
                       criterion1_anchor_clauses()});
  } catch (const std::exception& e) {
    results.push_back({"criterion-1 anchor-clause fidelity",
                       {false, std::string("exception: ") + e.what()}});
  }
  try {
    results.push_back(
        {"criterion-2 hypothesis-suite sign pattern", criterion2_sign_pattern()});
  } catch (const std::exception& e) {
    results.push_back({"criterion-2 hypothesis-suite sign pattern",
                       {false, std::string("exception: ") + e.what()}});
  }
  try {
    results.push_back(
        {"criterion-3 null calibration", criterion3_null_calibration()});
  } catch (const std::exception& e) {
    results.push_back({"criterion-3 null calibration",
                       {false, std::string("exception: ") + e.what()}});
  }
  try {
    contrast = contrast_experiment();
    results.push_back({"criterion-4 append-feature gain", contrast.gain});
  } catch (const std::exception& e) {
    contrast.weights = {false, std::string("exception: ") + e.what()};
    results.push_back({"criterion-4 append-feature gain",
                       {false, std::string("exception: ") + e.what()}});
  }
  try {
    results.push_back(
        {"criterion-5 statistical oracles", criterion5_statistical_oracles()});
  } catch (const std::exception& e) {
    results.push_back({"criterion-5 statistical oracles",
                       {false, std::string("exception: ") + e.what()}});
  }
  try {
    results.push_back({"criterion-6 bias audit", criterion6_bias_audit()});
  } catch (const std::exception& e) {
    results.push_back({"criterion-6 bias audit",
                       {false, std::string("exception: ") + e.what()}});
  }
  try {
    results.push_back(
        {"criterion-7 rerun determinism", criterion7_determinism()});
  } catch (const std::exception& e) {
    results.push_back({"criterion-7 rerun determinism",
                       {false, std::string("exception: ") + e.what()}});
  }
  results.push_back(
      {"criterion-8 weight-variation contrast", contrast.weights});

  int failures = 0;
  for (const Criterion& c : results) {
    if (!c.result.ok) ++failures;
    std::cout << (c.result.ok ? "PASS " : "FAIL ") << c.name << ": "
              << c.result.detail << '\n';
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
