#include "powercomm/belief.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace powercomm {
namespace {

bool is_aux_surface(const std::string& l) {
  static const std::set<std::string> kAux = {
      "am",  "is",   "are", "was",  "were", "be",  "been",  "being",
      "do",  "does", "did", "have", "has",  "had", "having",
      "'m",  "'re",  "'s",  "'ve",
  };
  return kAux.count(l) > 0;
}

bool is_be_form(const std::string& l) {
  static const std::set<std::string> kBe = {
      "am", "is", "are", "was", "were", "be", "been", "being",
      "'m", "'re", "'s",
  };
  return kBe.count(l) > 0;
}

bool is_clause_punct(const Token& t) {
  if (t.pos != Pos::PUNCT) return false;
  const std::string& s = t.surface;
  return s == "," || s == ";" || s == ":" || s == "(" || s == ")" ||
         s == "-" || s == "--";
}

bool is_first_person(const Token& t) {
  if (t.pos != Pos::PRON) return false;
  std::string l = to_lower(t.surface);
  return l == "i" || l == "we";
}

// Nearest preceding non-auxiliary verb reachable without crossing a clause
// boundary; -1 when none. This is the shallow stand-in for a complement
// dependency.
int governing_predicate(const Sentence& s, int head) {
  for (int j = head - 1; j >= 0; --j) {
    const Token& t = s.tokens[j];
    if (is_clause_punct(t) || t.pos == Pos::PUNCT) return -1;
    if (t.pos == Pos::CONJ || t.pos == Pos::PREP) return -1;
    std::string l = to_lower(t.surface);
    if (l == "that") continue;
    switch (t.pos) {
      case Pos::ADV:
      case Pos::DET:
      case Pos::ADJ:
      case Pos::NUM:
      case Pos::PRON:
      case Pos::NOUN:
      case Pos::TO:
      case Pos::MODAL:
        continue;
      case Pos::VERB:
        if (is_aux_surface(l)) continue;
        return j;
      default:
        return -1;
    }
  }
  return -1;
}

// Nearest preceding NOUN/PRON of a predicate, skipping adverbs and
// auxiliaries; -1 when a boundary intervenes first.
int subject_of(const Sentence& s, int pred) {
  for (int j = pred - 1; j >= 0; --j) {
    const Token& t = s.tokens[j];
    std::string l = to_lower(t.surface);
    if (l == "that") continue;
    if (t.pos == Pos::ADV || t.pos == Pos::TO) continue;
    if (t.pos == Pos::VERB && is_aux_surface(l)) continue;
    if (t.pos == Pos::MODAL) continue;
    if (t.pos == Pos::NOUN || t.pos == Pos::PRON) return j;
    return -1;
  }
  return -1;
}

// Modal governing the head, reachable leftward across adverbs/negation and
// auxiliaries only; -1 when none.
int governing_modal(const Sentence& s, int head) {
  for (int j = head - 1; j >= 0; --j) {
    const Token& t = s.tokens[j];
    std::string l = to_lower(t.surface);
    if (t.pos == Pos::ADV) continue;  // covers not/n't too
    if (t.pos == Pos::TO) continue;
    if (t.pos == Pos::VERB && is_aux_surface(l)) continue;
    if (t.pos == Pos::DET || t.pos == Pos::NUM || t.pos == Pos::ADJ) continue;
    if (t.pos == Pos::MODAL) return j;
    return -1;
  }
  return -1;
}

bool in_conditional_antecedent(const Sentence& s, int head) {
  for (int j = head - 1; j >= 0; --j) {
    const Token& t = s.tokens[j];
    if (t.pos == Pos::PUNCT) return false;
    std::string l = to_lower(t.surface);
    if (l == "if" || l == "unless" || l == "whether") return true;
  }
  return false;
}

// Scope of an imperative: from sentence start up to the first boundary
// (comma/semicolon/colon or conjunction) that is not followed by another
// base-form verb (coordinated imperatives stay in scope).
bool in_imperative_scope(const Sentence& s, int head) {
  const int n = static_cast<int>(s.tokens.size());
  int i = 0;
  while (i < n) {
    const Token& t = s.tokens[i];
    std::string l = to_lower(t.surface);
    bool boundary = (t.pos == Pos::CONJ) ||
                    (t.pos == Pos::PUNCT &&
                     (l == "," || l == ";" || l == ":"));
    if (!boundary) {
      ++i;
      continue;
    }
    int j = i + 1;
    while (j < n && (s.tokens[j].pos == Pos::ADV ||
                     to_lower(s.tokens[j].surface) == "please"))
      ++j;
    if (j < n && s.tokens[j].pos == Pos::VERB &&
        to_lower(s.tokens[j].surface) == s.tokens[j].lemma) {
      i = j + 1;
      continue;
    }
    break;
  }
  return head < i;
}

}  // namespace

const char* to_string(BeliefLabel label) {
  switch (label) {
    case BeliefLabel::CB: return "CB";
    case BeliefLabel::NCB: return "NCB";
    case BeliefLabel::ROB: return "ROB";
    case BeliefLabel::NA: return "NA";
  }
  return "?";
}

BeliefLabel belief_from_name(const std::string& name) {
  if (name == "CB") return BeliefLabel::CB;
  if (name == "NCB") return BeliefLabel::NCB;
  if (name == "ROB") return BeliefLabel::ROB;
  if (name == "NA") return BeliefLabel::NA;
  throw std::invalid_argument("unknown belief label: " + name);
}

BeliefTagger::BeliefTagger(const TextProcessor& tp) : tp_(tp) {}

std::vector<int> BeliefTagger::find_heads(const Sentence& s) const {
  std::vector<int> heads;
  std::set<int> added;
  const auto& toks = s.tokens;
  const int n = static_cast<int>(toks.size());
  auto next_non_adv = [&](int i) {
    for (int j = i + 1; j < n; ++j)
      if (toks[j].pos != Pos::ADV) return j;
    return -1;
  };
  for (int i = 0; i < n; ++i) {
    if (toks[i].pos != Pos::VERB) continue;
    std::string l = to_lower(toks[i].surface);
    if (is_aux_surface(l)) {
      int j = next_non_adv(i);
      if (j >= 0 && toks[j].pos == Pos::VERB) continue;  // plain auxiliary
      if (is_be_form(l)) {
        // Copula: the predicative ADJ/NOUN is the head, not "be".
        int k = i + 1, steps = 0, pred = -1;
        while (k < n && steps < 3) {
          Pos p = toks[k].pos;
          if (p == Pos::ADV || p == Pos::DET || p == Pos::NUM) {
            ++k;
            ++steps;
            continue;
          }
          if (p == Pos::ADJ || p == Pos::NOUN) pred = k;
          break;
        }
        if (pred >= 0 && added.insert(pred).second) heads.push_back(pred);
        continue;
      }
      // have/do with no governed verb act as main verbs.
    }
    if (added.insert(i).second) heads.push_back(i);
  }
  std::sort(heads.begin(), heads.end());
  return heads;
}

BeliefTagger::Classified BeliefTagger::classify_head_ex(const Sentence& s,
                                                        int head) const {
  auto heads = find_heads(s);
  if (!std::binary_search(heads.begin(), heads.end(), head))
    throw std::invalid_argument("not a propositional head");
  const auto& toks = s.tokens;
  const Lexicons& lx = tp_.lexicons();

  // NA rules.
  if (s.is_question) return {BeliefLabel::NA, "question"};
  if (s.is_imperative && in_imperative_scope(s, head))
    return {BeliefLabel::NA, "imperative"};
  int pred = governing_predicate(s, head);
  if (pred >= 0) {
    const std::string& pl = toks[pred].lemma;
    bool desire = lx.desire_predicates.count(pl) > 0;
    if (!desire && pl == "like") {
      int m = governing_modal(s, pred);
      if (m >= 0 && toks[m].lemma == "would")
        desire = lx.desire_predicates.count("would like") > 0;
    }
    if (desire) return {BeliefLabel::NA, "desire-complement"};
  }
  if (in_conditional_antecedent(s, head))
    return {BeliefLabel::NA, "conditional-antecedent"};

  // ROB rule: report predicate with a third-party subject. An outer
  // first-person factive does not cancel it.
  if (pred >= 0 && lx.report_predicates.count(toks[pred].lemma)) {
    int subj = subject_of(s, pred);
    bool first_person = subj >= 0 && is_first_person(toks[subj]);
    if (!first_person) return {BeliefLabel::ROB, "report-complement"};
  }

  // NCB rules.
  int m = governing_modal(s, head);
  if (m >= 0) {
    const std::string& ml = toks[m].lemma;
    if (ml == "may" || ml == "might" || ml == "could")
      return {BeliefLabel::NCB, "modal-epistemic"};
    if (ml == "should" || ml == "must") {
      bool stative = lx.stative_verbs.count(toks[head].lemma) > 0 ||
                     toks[head].pos == Pos::ADJ ||
                     toks[head].pos == Pos::NOUN;
      if (stative) return {BeliefLabel::NCB, "modal-epistemic-stative"};
    }
  }
  for (const auto& [mb, me, prop] : hedge_spans_internal(s)) {
    if (!prop) continue;
    if (head >= mb && head < me) continue;  // the hedge's own tokens
    if (mb == 0 && head >= me) return {BeliefLabel::NCB, "hedge"};
    if (me <= head) {
      bool blocked = false;
      for (int j = me; j < head; ++j) {
        const Token& t = toks[j];
        if (is_clause_punct(t) || t.pos == Pos::CONJ) {
          blocked = true;
          break;
        }
      }
      if (!blocked) return {BeliefLabel::NCB, "hedge"};
    }
  }
  if (pred >= 0 && lx.weak_belief_predicates.count(toks[pred].lemma)) {
    int subj = subject_of(s, pred);
    if (subj >= 0 && is_first_person(toks[subj]))
      return {BeliefLabel::NCB, "weak-belief-complement"};
  }

  return {BeliefLabel::CB, "default"};
}

std::vector<std::tuple<int, int, bool>> BeliefTagger::hedge_spans_internal(
    const Sentence& s) const {
  const Lexicons& lx = tp_.lexicons();
  const int n = static_cast<int>(s.tokens.size());
  std::vector<std::string> lower(n);
  for (int i = 0; i < n; ++i) lower[i] = to_lower(s.tokens[i].surface);
  std::vector<std::tuple<int, int, bool>> spans;
  int i = 0;
  while (i < n) {
    bool matched = false;
    for (int len = std::min(4, n - i); len >= 1 && !matched; --len) {
      std::string phrase = lower[i];
      for (int k = 1; k < len; ++k) phrase += " " + lower[i + k];
      if (lx.hedges.propositional.count(phrase)) {
        spans.emplace_back(i, i + len, true);
        i += len;
        matched = true;
      } else if (lx.hedges.relational.count(phrase)) {
        spans.emplace_back(i, i + len, false);
        i += len;
        matched = true;
      }
    }
    if (!matched) ++i;
  }
  return spans;
}

std::pair<int, int> BeliefTagger::count_hedges(const Sentence& s) const {
  int prop = 0, rel = 0;
  for (const auto& [b, e, is_prop] : hedge_spans_internal(s))
    (is_prop ? prop : rel) += 1;
  return {prop, rel};
}

std::vector<PropositionalHead> BeliefTagger::tag_sentences(
    const std::vector<Sentence>& sentences) const {
  std::vector<PropositionalHead> out;
  for (size_t si = 0; si < sentences.size(); ++si) {
    for (int h : find_heads(sentences[si])) {
      Classified c = classify_head_ex(sentences[si], h);
      out.push_back({static_cast<int>(si), h, c.label, c.rule_fired});
    }
  }
  return out;
}

BeliefTagger::TagResult BeliefTagger::tag_messages(
    const std::vector<const Message*>& messages) const {
  TagResult r;
  for (const Message* msg : messages) {
    auto sentences = tp_.analyze(msg->body);
    for (const auto& h : tag_sentences(sentences)) {
      r.heads.push_back({msg->id, h});
      switch (h.label) {
        case BeliefLabel::CB: ++r.counts.cb; break;
        case BeliefLabel::NCB: ++r.counts.ncb; break;
        case BeliefLabel::ROB: ++r.counts.rob; break;
        case BeliefLabel::NA: ++r.counts.na; break;
      }
    }
    for (const auto& s : sentences) {
      auto [p, rl] = count_hedges(s);
      r.prop_hedges += p;
      r.rel_hedges += rl;
      r.counts.token_count += static_cast<std::int64_t>(s.tokens.size());
    }
  }
  r.counts.defined = r.counts.token_count > 0;
  return r;
}

std::vector<BiasAuditResult> bias_audit(const std::vector<BeliefLabel>& gold,
                                        const std::vector<BeliefLabel>& predicted,
                                        const std::vector<int>& power) {
  const size_t n = gold.size();
  if (predicted.size() != n || power.size() != n)
    throw std::invalid_argument("bias audit inputs misaligned");
  std::vector<BiasAuditResult> out;
  for (BeliefLabel label : {BeliefLabel::CB, BeliefLabel::NCB,
                            BeliefLabel::ROB, BeliefLabel::NA}) {
    for (bool fp : {true, false}) {
      std::vector<int> err(n);
      for (size_t i = 0; i < n; ++i) {
        bool e = fp ? (predicted[i] == label && gold[i] != label)
                    : (gold[i] == label && predicted[i] != label);
        err[i] = e ? 1 : 0;
      }
      BiasAuditResult r;
      r.label = label;
      r.false_positive = fp;
      r.regression = logistic_power_test(err, power);
      out.push_back(std::move(r));
    }
  }
  // The audit is a family-wise decision over the eight tests, so acceptance
  // is judged on Bonferroni-corrected p-values.
  std::vector<double> ps;
  ps.reserve(out.size());
  for (const BiasAuditResult& r : out) ps.push_back(r.regression.p);
  const std::vector<double> adjusted = bonferroni(ps, static_cast<int>(ps.size()));
  for (size_t i = 0; i < out.size(); ++i)
    out[i].null_accepted = adjusted[i] > 0.05;
  return out;
}

}  // namespace powercomm
