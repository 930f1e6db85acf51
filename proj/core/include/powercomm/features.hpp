#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "powercomm/belief.hpp"
#include "powercomm/corpus.hpp"

namespace powercomm {

enum class NgramFamily { LN, PN, MN };
enum class AppendMode { PLAIN, APPEND };

const char* to_string(NgramFamily f);

struct FeatureConfig {
  bool vrb = true;
  bool pst = true;
  bool thr = true;
  bool dia = true;
  bool odp = true;
  bool bel = false;  // belief aggregates, for the analysis path
  bool ln = false;
  bool pn = false;
  bool mn = false;
  AppendMode ln_mode = AppendMode::PLAIN;
  AppendMode pn_mode = AppendMode::PLAIN;
  AppendMode mn_mode = AppendMode::PLAIN;
  std::set<int> ngram_orders = {1, 2, 3};
  int df_floor = 2;  // minimum instance frequency for ngram features

  bool operator==(const FeatureConfig&) const = default;
};

// Parses specs like "LN+PN+MN", "LNapnd+PN+MN", "VRB+PST+THR+DIA+ODP",
// "all", "baseline" (non-lexical families only). Case-insensitive family
// names; "apnd" suffix selects APPEND mode for LN/PN/MN. Throws on unknown
// names.
FeatureConfig parse_feature_spec(const std::string& spec);
std::string feature_spec_to_string(const FeatureConfig& cfg);

struct FeatureVector {
  bool defined = true;  // false for a participant with no sent messages
  std::map<std::string, double> entries;  // namespaced names, no zeros
};

struct DialogActCounts {
  int request_action = 0;
  int request_info = 0;
  int inform = 0;
  int conventional = 0;

  bool operator==(const DialogActCounts&) const = default;
};

// Cached per-message analysis shared by the feature families.
struct AnalyzedMessage {
  const Message* msg = nullptr;
  std::vector<Sentence> sentences;
  std::vector<PropositionalHead> heads;
  DialogActCounts dia;
  int odp = 0;
  std::int64_t tokens = 0;
};

// One classifier instance: concatenated pair features plus ratios.
struct Instance {
  std::string id;  // "<thread_id>/<p1>/<p2>"
  int label = 1;   // +1 = P1_SUPERIOR, -1 = P1_SUBORDINATE
  std::map<std::string, double> features;
};

class FeatureExtractor {
 public:
  FeatureExtractor(const BeliefTagger& tagger, FeatureConfig config);

  // Ngram names for one sentence (no family prefix). head_labels maps
  // token index -> label for APPEND mode. Boundary markers <s> and </s>
  // pad the ends for order >= 2. Throws when order < 1.
  static std::vector<std::string> build_ngrams(
      const Sentence& sentence,
      const std::map<int, BeliefLabel>& head_labels, NgramFamily family,
      int order, AppendMode mode);

  std::vector<AnalyzedMessage> analyze_thread(const Thread& thread) const;

  // Per-pair feature vectors (p1 first). A side with no sent messages
  // comes back with defined=false.
  std::pair<FeatureVector, FeatureVector> extract_pair(
      const Thread& thread, const std::vector<AnalyzedMessage>& analyzed,
      const Ripp& ripp) const;
  std::pair<FeatureVector, FeatureVector> extract_pair(
      const Thread& thread, const Ripp& ripp) const;

  DialogActCounts tag_dialog_acts(const Message& message) const;
  int detect_odp(const Message& message) const;

  // Belief aggregates for the analysis path (raw counts + token count).
  BeliefCounts belief_counts(const Thread& thread,
                             const std::string& participant) const;

  const FeatureConfig& config() const { return cfg_; }
  const BeliefTagger& tagger() const { return tagger_; }

 private:
  DialogActCounts dialog_acts_of(const std::vector<Sentence>& sentences) const;
  int odp_of(const std::vector<Sentence>& sentences) const;

  const BeliefTagger& tagger_;
  FeatureConfig cfg_;
};

// Builds the classifier instance for a RIPP from its two sides: P1:/P2:
// prefixed copies plus RATIO:name = v1/(v1+v2) for non-ngram features.
// Returns an instance with empty features when either side is undefined
// (callers drop those).
Instance make_instance(const FeatureVector& f1, const FeatureVector& f2,
                       const Ripp& ripp);

struct Vocabulary {
  std::map<std::string, int> index;  // feature name -> column
};

// Frozen over the training instances: scalar features always enter; ngram
// features (":LN:", ":PN:", ":MN:") need document frequency >= df_floor.
Vocabulary build_vocabulary(const std::vector<Instance>& train_instances,
                            int df_floor);

// Sparse export "instance_id<TAB>feature<TAB>value" with a per-instance
// "__label__" row; vocabulary as "feature<TAB>column".
void save_instances(const std::vector<Instance>& instances,
                    const std::string& path);
std::vector<Instance> load_instances(const std::string& path);
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

}  // namespace powercomm
