#pragma once

#include <string>
#include <vector>

#include "powercomm/lexicon.hpp"

namespace powercomm {

enum class Pos {
  NOUN, VERB, MODAL, ADJ, ADV, PRON, DET, PREP, CONJ, NUM, PUNCT, WH, TO,
  OTHER,
};

const char* to_string(Pos pos);
Pos pos_from_name(const std::string& name);  // throws on unknown name

// Open-class tags are the ones replaced by their tag in mixed ngrams.
inline bool is_open_class(Pos p) {
  return p == Pos::NOUN || p == Pos::VERB || p == Pos::ADJ || p == Pos::ADV;
}

struct Token {
  std::string surface;  // original casing preserved
  std::string lemma;    // always lowercase
  Pos pos = Pos::OTHER;
  int index = 0;        // position in sentence, contiguous from 0
};

struct Sentence {
  std::vector<Token> tokens;
  bool is_question = false;
  bool is_imperative = false;  // never set together with is_question
};

// ASCII lowercasing (the pipeline treats text as byte strings; non-ASCII
// bytes pass through unchanged).
std::string to_lower(const std::string& s);

// Rule-based splitter/tokenizer/tagger/lemmatizer. Deterministic; the
// tagging and lemmatization steps are virtual so an alternative
// implementation can be swapped in behind the same contract.
class TextProcessor {
 public:
  explicit TextProcessor(const Lexicons& lexicons);
  virtual ~TextProcessor() = default;

  // Splits on . ! ? and blank lines; bundled abbreviation list and
  // single-letter initials protect non-final periods. Returned strings are
  // trimmed raw slices of the input.
  std::vector<std::string> split_sentences(const std::string& text) const;

  // Whitespace/punctuation-boundary split with contraction handling
  // ("don't" -> "do" + "n't"), then tagging, lemmatization, and the
  // question/imperative flags.
  Sentence tokenize(const std::string& sentence_text) const;

  // Fills pos for every token (surfaces must be present).
  virtual void pos_tag(Sentence& sentence) const;

  // Lowercase lemma for a token whose pos is already assigned.
  virtual std::string lemmatize(const Token& token) const;

  // split_sentences + tokenize over a whole message body.
  std::vector<Sentence> analyze(const std::string& text) const;

  // Inverse of the surface split: surfaces joined by single spaces.
  // tokenize(detokenize(s)) reproduces s's surfaces.
  static std::string detokenize(const Sentence& sentence);

  const Lexicons& lexicons() const { return lex_; }

  // Base form of a verb if the lowercase word is a known verb or a regular
  // inflection of one (lexicon-guided, with undoubling and e-restoration);
  // empty string otherwise.
  std::string verb_base(const std::string& lower_word) const;

 private:
  std::vector<std::string> split_surfaces(const std::string& text) const;
  void set_flags(Sentence& s) const;

  Lexicons lex_;
};

}  // namespace powercomm
