#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "powercomm/features.hpp"

namespace powercomm {

// Training hyperparameters. Defaults are recorded in every saved model so a
// run can always be reproduced from its artifacts.
struct TrainConfig {
  double reg_strength = 0.1;  // L2 regularization strength (lambda)
  int epochs = 30;
  std::uint64_t seed = 42;
  std::string loss = "HINGE";

  bool operator==(const TrainConfig&) const = default;
};

// Linear scoring model: score = w . x + b over named features.
struct LinearModel {
  Vocabulary vocab;
  std::vector<double> weights;  // one entry per vocabulary column
  double bias = 0.0;
  TrainConfig config;

  // Weight for a feature name; 0 when the name is not in the vocabulary.
  double weight(const std::string& name) const;
  double score(const std::map<std::string, double>& features) const;
  double score(const Instance& instance) const {
    return score(instance.features);
  }
  // Ties (score exactly 0) resolve to P1_SUPERIOR by fixed rule.
  Gold predict(const std::map<std::string, double>& features) const {
    return score(features) >= 0.0 ? Gold::P1_SUPERIOR : Gold::P1_SUBORDINATE;
  }
  Gold predict(const Instance& instance) const {
    return predict(instance.features);
  }
};

// Trains an L2-regularized hinge-loss linear model with deterministic seeded
// stochastic subgradient descent (fixed 1/(lambda*(t+t0)) step schedule,
// per-epoch seeded shuffles, weights averaged over the final epoch).
// Features absent from `vocab` are ignored. Throws std::invalid_argument on
// fewer than 2 instances or single-class labels ("degenerate labels").
LinearModel train_svm(const std::vector<Instance>& train,
                      const Vocabulary& vocab, const TrainConfig& config);

// Full objective: lambda/2 * ||w||^2 + mean hinge loss (bias unregularized).
double svm_objective(const LinearModel& model,
                     const std::vector<Instance>& instances);

struct EvalResult {
  double accuracy = 0.0;
  std::int64_t correct = 0;
  std::int64_t total = 0;
  std::vector<int> correctness;  // 1/0 per instance, in input order
};

// Accuracy plus the per-instance correctness vector (input order), the
// latter being the input to paired randomization comparisons. Throws
// std::invalid_argument on an empty instance list.
EvalResult evaluate(const LinearModel& model,
                    const std::vector<Instance>& instances);

// Versioned flat text format: header, config snapshot, bias, then one
// "name<TAB>weight" line per vocabulary column. Human-diffable.
void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(const std::string& path);

// One propositional-head lemma whose tagged unigram variants carry weights.
struct WeightVariationRow {
  std::string head_lemma;
  std::map<BeliefLabel, double> version_weights;  // present versions only
  double stddev = 0.0;  // population stddev over present versions (>= 2)
};

// Groups label-tagged lemma-unigram features ("LN:<lemma>(<LABEL>)") by head
// lemma, folding the P1/P2 sides into one directional weight per version
// (weight(P1:f) - weight(P2:f)). Lemmas with fewer than two versions present
// are excluded. Sorted by stddev descending (lemma ascending on ties),
// truncated to top_k. Throws std::invalid_argument when the vocabulary holds
// no such tagged unigrams.
std::vector<WeightVariationRow> weight_variation_report(
    const LinearModel& model, int top_k);

std::string format_weight_variation(const std::vector<WeightVariationRow>& rows);

struct RegSelection {
  double reg_strength = 0.0;
  LinearModel model;  // model trained at the selected strength
  std::vector<std::pair<double, double>> grid;  // (strength, dev accuracy)
};

// Trains once per grid value, evaluates on `dev`, keeps the first strength
// achieving the best dev accuracy.
RegSelection select_reg_strength(
    const std::vector<Instance>& train, const Vocabulary& vocab,
    const std::vector<Instance>& dev, TrainConfig base,
    const std::vector<double>& grid = {0.01, 0.1, 1.0});

}  // namespace powercomm
