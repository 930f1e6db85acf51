#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "powercomm/corpus.hpp"
#include "powercomm/stats.hpp"
#include "powercomm/textproc.hpp"

namespace powercomm {

enum class BeliefLabel { CB, NCB, ROB, NA };

const char* to_string(BeliefLabel label);
BeliefLabel belief_from_name(const std::string& name);  // throws on unknown

struct PropositionalHead {
  int sentence_ref = 0;  // sentence index within the message
  int token_index = 0;
  BeliefLabel label = BeliefLabel::CB;
  std::string rule_fired;

  bool operator==(const PropositionalHead&) const = default;
};

// Standoff record tying a head to its message.
struct TaggedHead {
  std::string message_id;
  PropositionalHead head;
};

struct BeliefCounts {
  bool defined = false;  // false for participants with no messages/tokens
  std::int64_t cb = 0;
  std::int64_t ncb = 0;
  std::int64_t rob = 0;
  std::int64_t na = 0;
  std::int64_t token_count = 0;

  bool operator==(const BeliefCounts&) const = default;
};

// Rule-cascade commitment tagger. Priority NA > ROB > NCB > CB; first
// matching rule wins, every head gets exactly one label.
class BeliefTagger {
 public:
  explicit BeliefTagger(const TextProcessor& tp);

  // Indices of propositional heads: main verbs (non-auxiliary VERB tokens)
  // plus the predicative ADJ/NOUN after a be-copula. Modals and
  // verb-governing auxiliaries are never heads.
  std::vector<int> find_heads(const Sentence& sentence) const;

  struct Classified {
    BeliefLabel label;
    std::string rule_fired;
  };

  // Throws std::invalid_argument("not a propositional head") when head is
  // not in find_heads(sentence).
  Classified classify_head_ex(const Sentence& sentence, int head) const;
  BeliefLabel classify_head(const Sentence& sentence, int head) const {
    return classify_head_ex(sentence, head).label;
  }

  // (propositional, relational) maximal non-overlapping phrase matches,
  // case-insensitive, longest match first.
  std::pair<int, int> count_hedges(const Sentence& sentence) const;

  struct TagResult {
    BeliefCounts counts;
    std::vector<TaggedHead> heads;
    std::int64_t prop_hedges = 0;
    std::int64_t rel_hedges = 0;
  };

  // Aggregates over all sentences of the given messages (one participant
  // within one thread). Empty list or zero tokens -> counts.defined=false.
  TagResult tag_messages(const std::vector<const Message*>& messages) const;

  // Single-message helper used by tag_messages.
  std::vector<PropositionalHead> tag_sentences(
      const std::vector<Sentence>& sentences) const;

  const TextProcessor& text() const { return tp_; }

  // Maximal non-overlapping hedge matches as (begin, end, is_propositional)
  // token spans; exposed for the scan-oracle tests.
  std::vector<std::tuple<int, int, bool>> hedge_spans_internal(
      const Sentence& sentence) const;

 private:
  const TextProcessor& tp_;
};

// One of the eight audit regressions: per label, per error direction.
struct BiasAuditResult {
  BeliefLabel label = BeliefLabel::CB;
  bool false_positive = true;  // false -> false-negative test
  RegressionResult regression;
  bool null_accepted = true;  // p > 0.05 on the power coefficient
};

// Logistic regression of each error indicator (4 labels x FP/FN) on the
// author's power role (1 = superior, 0 = subordinate). The audit passes
// when all eight tests accept the null at p > 0.05. Throws on misaligned
// input lengths.
std::vector<BiasAuditResult> bias_audit(const std::vector<BeliefLabel>& gold,
                                        const std::vector<BeliefLabel>& predicted,
                                        const std::vector<int>& power);

}  // namespace powercomm
