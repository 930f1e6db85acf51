#include "powercomm/belief.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

using namespace powercomm;

namespace {

const TextProcessor& proc() {
  static const Lexicons lex = Lexicons::builtin();
  static const TextProcessor tp(lex);
  return tp;
}

const BeliefTagger& tagger() {
  static const BeliefTagger bt(proc());
  return bt;
}

// Label of one specific head lemma in one sentence.
BeliefLabel label_of(const std::string& text, const std::string& head_lemma) {
  const std::vector<Sentence> sents = proc().analyze(text);
  REQUIRE(sents.size() == 1);
  const Sentence& s = sents[0];
  for (int h : tagger().find_heads(s)) {
    if (s.tokens[static_cast<size_t>(h)].lemma == head_lemma)
      return tagger().classify_head(s, h);
  }
  FAIL("head '", head_lemma, "' not found in: ", text);
  return BeliefLabel::CB;
}

// Independent longest-match-first, non-overlapping phrase scan used as the
// hedge-count oracle. Works on the lowercased token sequence directly.
std::pair<int, int> oracle_hedges(const Sentence& s, const HedgeLexicon& lx) {
  std::vector<std::string> words;
  for (const Token& t : s.tokens) words.push_back(to_lower(t.surface));
  size_t max_len = 1;
  for (const auto& set : {lx.propositional, lx.relational})
    for (const std::string& p : set)
      max_len = std::max(max_len,
                         static_cast<size_t>(std::count(p.begin(), p.end(), ' ') + 1));
  int prop = 0, rel = 0;
  size_t i = 0;
  while (i < words.size()) {
    bool matched = false;
    for (size_t len = std::min(max_len, words.size() - i); len >= 1 && !matched;
         --len) {
      std::string phrase = words[i];
      for (size_t j = 1; j < len; ++j) phrase += ' ' + words[i + j];
      if (lx.propositional.count(phrase)) {
        ++prop;
        i += len;
        matched = true;
      } else if (lx.relational.count(phrase)) {
        ++rel;
        i += len;
        matched = true;
      }
    }
    if (!matched) ++i;
  }
  return {prop, rel};
}

}  // namespace

TEST_CASE("the ten anchor clauses classify exactly as annotated") {
  CHECK(label_of("John will submit the report.", "submit") == BeliefLabel::CB);
  CHECK(label_of("I know that John is capable.", "capable") == BeliefLabel::CB);
  CHECK(label_of("John may submit the report.", "submit") == BeliefLabel::NCB);
  CHECK(label_of("I guess John is capable.", "capable") == BeliefLabel::NCB);
  CHECK(label_of("Sara says John will submit the report.", "submit") ==
        BeliefLabel::ROB);
  CHECK(label_of("Sara thinks John may be capable.", "capable") ==
        BeliefLabel::ROB);
  CHECK(label_of("I need John to submit the report.", "submit") ==
        BeliefLabel::NA);
  CHECK(label_of("Will John be capable?", "capable") == BeliefLabel::NA);
  CHECK(label_of("I need the report by tomorrow.", "need") == BeliefLabel::CB);
  CHECK(label_of("If I need the report, I will let you know.", "need") ==
        BeliefLabel::NA);
}

TEST_CASE("every head gets exactly one label and heads are main predicates") {
  for (const char* text :
       {"The vendor may delay the shipment because the parts are late .",
        "Please send the file and tell maria the plan is ready .",
        "If sara approves the budget , john will schedule the review ."}) {
    for (const Sentence& s : proc().analyze(text)) {
      const auto heads = tagger().find_heads(s);
      for (int h : heads) {
        const auto c = tagger().classify_head_ex(s, h);
        CHECK(!c.rule_fired.empty());
        const Pos pos = s.tokens[static_cast<size_t>(h)].pos;
        CHECK((pos == Pos::VERB || pos == Pos::ADJ || pos == Pos::NOUN));
        CHECK(pos != Pos::MODAL);
      }
    }
  }
  const std::vector<Sentence> none = proc().analyze("The report .");
  REQUIRE(none.size() == 1);
  CHECK(tagger().find_heads(none[0]).empty());
}

TEST_CASE("classify_head rejects non-heads") {
  const std::vector<Sentence> s = proc().analyze("John will submit the report.");
  REQUIRE(s.size() == 1);
  CHECK_THROWS_WITH_AS(tagger().classify_head(s[0], 0),
                       "not a propositional head", std::invalid_argument);
}

TEST_CASE("cascade priority: NA beats ROB beats NCB") {
  // Question containing a report frame: the question wins.
  CHECK(label_of("Does sara say john will submit the report ?", "submit") ==
        BeliefLabel::NA);
  // Report frame over an epistemic modal: reported belief wins.
  CHECK(label_of("Sara says john may submit the report .", "submit") ==
        BeliefLabel::ROB);
  // First-person reporter is not a third party: no ROB.
  CHECK(label_of("I say the plan works .", "work") == BeliefLabel::CB);
}

TEST_CASE("inserting an unrelated sentence never changes labels") {
  const std::string core = "Sara says john will submit the report .";
  const std::vector<Sentence> alone = proc().analyze(core);
  const std::vector<Sentence> framed = proc().analyze(
      "The weather was nice . " + core + " The office closes at five .");
  REQUIRE(alone.size() == 1);
  REQUIRE(framed.size() == 3);
  const Sentence& a = alone[0];
  const Sentence& b = framed[1];
  const auto ha = tagger().find_heads(a);
  const auto hb = tagger().find_heads(b);
  REQUIRE(ha == hb);
  for (size_t i = 0; i < ha.size(); ++i)
    CHECK(tagger().classify_head(a, ha[i]) == tagger().classify_head(b, hb[i]));
}

TEST_CASE("committed belief is the modal label on plain declaratives") {
  std::map<BeliefLabel, int> dist;
  for (const std::string& line :
       testutil::read_fixture_lines("declaratives.txt")) {
    if (line.empty()) continue;
    for (const Sentence& s : proc().analyze(line))
      for (int h : tagger().find_heads(s)) dist[tagger().classify_head(s, h)]++;
  }
  REQUIRE(!dist.empty());
  for (const auto& [label, n] : dist)
    if (label != BeliefLabel::CB) CHECK(dist[BeliefLabel::CB] > n);
}

TEST_CASE("hedge counts match an independent scan oracle") {
  const HedgeLexicon& lx = proc().lexicons().hedges;
  REQUIRE(lx.propositional.count("maybe"));
  REQUIRE(lx.propositional.count("i guess"));

  const Sentence m = proc().tokenize("maybe we should go");
  CHECK(tagger().count_hedges(m) == std::pair<int, int>{1, 0});
  const Sentence g = proc().tokenize("i guess i guess");
  CHECK(tagger().count_hedges(g) == std::pair<int, int>{2, 0});

  for (const char* text :
       {"maybe the vendor will perhaps deliver , i think",
        "i guess the plan is sort of ready",
        "it appears to me that this may kind of work , i believe",
        "no hedges at all in this sentence",
        "possibly maybe i guess probably"}) {
    const Sentence s = proc().tokenize(text);
    CHECK(tagger().count_hedges(s) == oracle_hedges(s, lx));
  }
}

TEST_CASE("tag_messages aggregates counts and flags empty participants") {
  Message m1;
  m1.id = "m1";
  m1.sender = "ann";
  m1.body = "John will submit the report. John may submit the report. "
            "Sara says John will submit the report. I need John to submit "
            "the report.";
  const auto res = tagger().tag_messages({&m1});
  CHECK(res.counts.defined);
  // The four "submit" heads carry one label each; the matrix verbs "says"
  // and "need" are themselves committed assertions by the writer.
  CHECK(res.counts.cb == 3);
  CHECK(res.counts.ncb == 1);
  CHECK(res.counts.rob == 1);
  CHECK(res.counts.na == 1);
  CHECK(res.counts.token_count > 0);

  const auto empty = tagger().tag_messages({});
  CHECK_FALSE(empty.counts.defined);
}

TEST_CASE("bias audit: perfect predictions accept all eight nulls") {
  std::vector<BeliefLabel> gold;
  std::vector<int> power;
  for (int i = 0; i < 200; ++i) {
    gold.push_back(static_cast<BeliefLabel>(i % 4));
    power.push_back(i % 2);
  }
  const auto results = bias_audit(gold, gold, power);
  REQUIRE(results.size() == 8);
  for (const auto& r : results) {
    CHECK(r.null_accepted);
    CHECK(r.regression.p == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(bias_audit(gold, {}, power), std::invalid_argument);
}
