#include "powercomm/textproc.hpp"

#include <array>
#include <cctype>
#include <set>
#include <stdexcept>

namespace powercomm {
namespace {

constexpr std::array<const char*, 14> kPosNames = {
    "NOUN", "VERB", "MODAL", "ADJ",  "ADV", "PRON", "DET",
    "PREP", "CONJ", "NUM",   "PUNCT", "WH",  "TO",   "OTHER",
};

bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

const std::set<std::string>& aux_surfaces() {
  static const std::set<std::string> kAux = {
      "am",   "is",  "are", "was",  "were", "be",  "been", "being",
      "do",   "does", "did", "have", "has",  "had", "having",
      "'m",   "'re", "'s",  "'ve",
  };
  return kAux;
}

}  // namespace

const char* to_string(Pos pos) { return kPosNames[static_cast<int>(pos)]; }

Pos pos_from_name(const std::string& name) {
  for (size_t i = 0; i < kPosNames.size(); ++i)
    if (name == kPosNames[i]) return static_cast<Pos>(i);
  throw std::invalid_argument("unknown pos tag name: " + name);
}

std::string to_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

TextProcessor::TextProcessor(const Lexicons& lexicons) : lex_(lexicons) {}

std::vector<std::string> TextProcessor::split_sentences(
    const std::string& text) const {
  std::vector<std::string> out;
  const size_t n = text.size();
  auto flush = [&](size_t b, size_t e) {
    while (b < e && is_space_char(text[b])) ++b;
    while (e > b && is_space_char(text[e - 1])) --e;
    if (e > b) out.push_back(text.substr(b, e - b));
  };
  size_t start = 0;
  for (size_t i = 0; i < n; ++i) {
    char c = text[i];
    if (c == '\n') {
      // A blank line (possibly with spaces) ends the sentence in progress.
      size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r'))
        ++j;
      if (j < n && text[j] == '\n') {
        flush(start, i);
        start = j;
      }
      continue;
    }
    if (c != '.' && c != '!' && c != '?') continue;
    if (c == '.') {
      // Collect the word just before the period.
      size_t wb = i;
      while (wb > 0 && is_word_char(text[wb - 1])) --wb;
      std::string word = to_lower(text.substr(wb, i - wb));
      bool alpha = !word.empty();
      for (char wc : word)
        if (!std::isalpha(static_cast<unsigned char>(wc))) alpha = false;
      if (alpha && (word.size() == 1 || lex_.abbreviations.count(word)))
        continue;  // initial like "J." or listed abbreviation
      if (i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1])))
        continue;  // decimal point
    }
    // Absorb runs like "?!" or "..." plus closing quotes/brackets.
    size_t j = i;
    while (j + 1 < n &&
           (text[j + 1] == '.' || text[j + 1] == '!' || text[j + 1] == '?'))
      ++j;
    while (j + 1 < n &&
           (text[j + 1] == '"' || text[j + 1] == '\'' || text[j + 1] == ')' ||
            text[j + 1] == ']'))
      ++j;
    if (j + 1 < n && !is_space_char(text[j + 1])) continue;  // mid-token
    flush(start, j + 1);
    start = j + 1;
    i = j;
  }
  flush(start, n);
  return out;
}

std::vector<std::string> TextProcessor::split_surfaces(
    const std::string& text) const {
  std::vector<std::string> words;
  const size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    char c = text[i];
    if (is_space_char(c)) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n) {
        char d = text[j];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          ++j;
          continue;
        }
        if ((d == '.' || d == ',' || d == ':' || d == '/' || d == '-') &&
            j + 1 < n && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
          ++j;
          continue;
        }
        break;
      }
      words.push_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_word_char(c)) {
      size_t j = i;
      while (j < n && (is_word_char(text[j]) ||
                       (text[j] == '\'' && j + 1 < n && is_word_char(text[j + 1]))))
        ++j;
      words.push_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    if (c == '\'' && i + 1 < n && is_word_char(text[i + 1])) {
      size_t j = i + 1;
      while (j < n && is_word_char(text[j])) ++j;
      words.push_back(text.substr(i, j - i));
      i = j;
      continue;
    }
    words.push_back(std::string(1, c));
    ++i;
  }

  // Contraction splits, applied wordwise.
  std::vector<std::string> out;
  out.reserve(words.size());
  for (auto& w : words) {
    std::string l = to_lower(w);
    if (l == "cannot") {
      out.push_back(w.substr(0, 3));
      out.push_back("not");
      continue;
    }
    if (l.size() > 3 && ends_with(l, "n't")) {
      std::string stem = w.substr(0, w.size() - 3);
      std::string ls = to_lower(stem);
      if (ls == "ca")
        stem = "can";
      else if (ls == "wo")
        stem = "will";
      else if (ls == "sha")
        stem = "shall";
      out.push_back(stem);
      out.push_back("n't");
      continue;
    }
    bool done = false;
    for (const char* suf : {"'ll", "'re", "'ve"}) {
      if (l.size() > 3 && ends_with(l, suf)) {
        out.push_back(w.substr(0, w.size() - 3));
        out.push_back(l.substr(l.size() - 3));
        done = true;
        break;
      }
    }
    if (done) continue;
    for (const char* suf : {"'m", "'d", "'s"}) {
      if (l.size() > 2 && ends_with(l, suf)) {
        out.push_back(w.substr(0, w.size() - 2));
        out.push_back(l.substr(l.size() - 2));
        done = true;
        break;
      }
    }
    if (done) continue;
    out.push_back(std::move(w));
  }
  return out;
}

std::string TextProcessor::verb_base(const std::string& l) const {
  auto ir = lex_.irregular_lemmas.find(l);
  if (ir != lex_.irregular_lemmas.end()) return ir->second;
  if (lex_.verbs.count(l)) return l;
  auto known = [&](const std::string& b) { return lex_.verbs.count(b) > 0; };
  const size_t n = l.size();
  if (n > 3 && ends_with(l, "ies")) {
    std::string b = l.substr(0, n - 3) + "y";
    if (known(b)) return b;
  }
  if (n > 2 && ends_with(l, "es")) {
    std::string b = l.substr(0, n - 2);
    if (known(b)) return b;
  }
  if (n > 1 && l.back() == 's' && !ends_with(l, "ss")) {
    std::string b = l.substr(0, n - 1);
    if (known(b)) return b;
  }
  for (const char* suf : {"ed", "ing"}) {
    const size_t sl = std::string(suf).size();
    if (n > sl + 1 && ends_with(l, suf)) {
      std::string b = l.substr(0, n - sl);
      if (known(b)) return b;
      if (b.size() >= 2 && b[b.size() - 1] == b[b.size() - 2]) {
        std::string u = b.substr(0, b.size() - 1);
        if (known(u)) return u;
      }
      if (known(b + "e")) return b + "e";
    }
  }
  return "";
}

void TextProcessor::pos_tag(Sentence& s) const {
  auto prev_meaningful = [&](size_t i) -> const Token* {
    for (size_t j = i; j-- > 0;) {
      if (s.tokens[j].pos == Pos::ADV) continue;
      if (s.tokens[j].pos == Pos::PUNCT) return nullptr;
      return &s.tokens[j];
    }
    return nullptr;
  };
  for (size_t idx = 0; idx < s.tokens.size(); ++idx) {
    Token& t = s.tokens[idx];
    const std::string& w = t.surface;
    std::string l = to_lower(w);
    bool has_alnum = false;
    for (char c : w)
      if (is_word_char(c)) has_alnum = true;
    if (!has_alnum) {
      t.pos = Pos::PUNCT;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(w[0]))) {
      t.pos = Pos::NUM;
      continue;
    }
    auto cc = lex_.closed_class.find(l);
    if (cc != lex_.closed_class.end()) {
      t.pos = pos_from_name(cc->second);
      continue;
    }
    if (lex_.adverbs.count(l) || (l.size() > 3 && ends_with(l, "ly"))) {
      t.pos = Pos::ADV;
      continue;
    }
    if (lex_.adjectives.count(l)) {
      t.pos = Pos::ADJ;
      continue;
    }
    if (!verb_base(l).empty()) {
      const Token* p = prev_meaningful(idx);
      bool nounish_left = p && (p->pos == Pos::DET || p->pos == Pos::ADJ ||
                                p->pos == Pos::NUM || p->pos == Pos::PREP);
      t.pos = nounish_left ? Pos::NOUN : Pos::VERB;
      continue;
    }
    bool noun_suffix = false;
    for (const char* suf :
         {"tion", "ment", "ness", "ity", "ance", "ence", "ship", "sion",
          "hood"}) {
      if (l.size() > std::string(suf).size() + 1 && ends_with(l, suf)) {
        noun_suffix = true;
        break;
      }
    }
    if (noun_suffix) {
      t.pos = Pos::NOUN;
      continue;
    }
    if (l.size() > 4 && (ends_with(l, "ing") || ends_with(l, "ed"))) {
      const Token* p = prev_meaningful(idx);
      bool aux_left =
          p && (p->pos == Pos::MODAL ||
                (p->pos == Pos::VERB && aux_surfaces().count(to_lower(p->surface))));
      if (ends_with(l, "ed"))
        t.pos = Pos::VERB;
      else
        t.pos = aux_left ? Pos::VERB : Pos::NOUN;
      continue;
    }
    if (idx > 0 && std::isupper(static_cast<unsigned char>(w[0]))) {
      t.pos = Pos::NOUN;
      continue;
    }
    const Token* p = prev_meaningful(idx);
    if (p && (p->pos == Pos::MODAL || p->pos == Pos::TO || p->pos == Pos::PRON))
      t.pos = Pos::VERB;
    else
      t.pos = Pos::NOUN;
  }
}

std::string TextProcessor::lemmatize(const Token& t) const {
  std::string l = to_lower(t.surface);
  const size_t n = l.size();
  if (t.pos == Pos::MODAL) {
    if (l == "'ll") return "will";
    if (l == "'d") return "would";
    return l;
  }
  if (t.pos == Pos::ADV && l == "n't") return "not";
  if (t.pos == Pos::VERB) {
    auto ir = lex_.irregular_lemmas.find(l);
    if (ir != lex_.irregular_lemmas.end()) return ir->second;
    std::string vb = verb_base(l);
    if (!vb.empty()) return vb;
    if (n > 3 && ends_with(l, "ies")) return l.substr(0, n - 3) + "y";
    for (const char* suf : {"ing", "ed"}) {
      const size_t sl = std::string(suf).size();
      if (n > sl + 2 && ends_with(l, suf)) {
        std::string b = l.substr(0, n - sl);
        if (b.size() >= 3 && b[b.size() - 1] == b[b.size() - 2] &&
            !is_vowel(b.back()))
          b.pop_back();
        return b;
      }
    }
    if (n > 3 && ends_with(l, "es")) {
      std::string stem = l.substr(0, n - 2);
      if (ends_with(stem, "s") || ends_with(stem, "x") ||
          ends_with(stem, "z") || ends_with(stem, "ch") ||
          ends_with(stem, "sh"))
        return stem;
    }
    if (n > 2 && l.back() == 's' && !ends_with(l, "ss"))
      return l.substr(0, n - 1);
    return l;
  }
  if (t.pos == Pos::NOUN) {
    if (n > 3 && ends_with(l, "ies")) return l.substr(0, n - 3) + "y";
    if (n > 3 && ends_with(l, "es")) {
      std::string stem = l.substr(0, n - 2);
      if (ends_with(stem, "s") || ends_with(stem, "x") ||
          ends_with(stem, "z") || ends_with(stem, "ch") ||
          ends_with(stem, "sh"))
        return stem;
    }
    if (n > 2 && l.back() == 's' && !ends_with(l, "ss") &&
        !ends_with(l, "us") && !ends_with(l, "is"))
      return l.substr(0, n - 1);
    return l;
  }
  return l;
}

void TextProcessor::set_flags(Sentence& s) const {
  s.is_question = false;
  s.is_imperative = false;
  if (s.tokens.empty()) return;
  static const std::set<std::string> kQuotes = {"\"", "'", ")", "]"};
  int last = static_cast<int>(s.tokens.size()) - 1;
  while (last >= 0 && kQuotes.count(s.tokens[last].surface)) --last;
  if (last >= 0 && s.tokens[last].surface == "?") s.is_question = true;
  if (!s.is_question) {
    const Token& t0 = s.tokens[0];
    if (t0.pos == Pos::WH) {
      s.is_question = true;
    } else if (t0.pos == Pos::MODAL && s.tokens.size() > 1) {
      Pos p1 = s.tokens[1].pos;
      if (p1 == Pos::PRON || p1 == Pos::NOUN || p1 == Pos::DET)
        s.is_question = true;
    }
  }
  if (s.is_question) return;
  size_t i = 0;
  while (i < s.tokens.size() && (to_lower(s.tokens[i].surface) == "please" ||
                                 s.tokens[i].pos == Pos::PUNCT))
    ++i;
  if (i < s.tokens.size()) {
    const Token& t = s.tokens[i];
    if (t.pos == Pos::VERB && to_lower(t.surface) == t.lemma)
      s.is_imperative = true;
  }
}

Sentence TextProcessor::tokenize(const std::string& sentence_text) const {
  Sentence s;
  auto surfaces = split_surfaces(sentence_text);
  s.tokens.reserve(surfaces.size());
  int idx = 0;
  for (auto& w : surfaces) {
    Token t;
    t.surface = std::move(w);
    t.index = idx++;
    s.tokens.push_back(std::move(t));
  }
  pos_tag(s);
  for (auto& t : s.tokens) t.lemma = lemmatize(t);
  set_flags(s);
  return s;
}

std::vector<Sentence> TextProcessor::analyze(const std::string& text) const {
  std::vector<Sentence> out;
  for (const auto& raw : split_sentences(text)) out.push_back(tokenize(raw));
  return out;
}

std::string TextProcessor::detokenize(const Sentence& sentence) {
  std::string out;
  for (const auto& t : sentence.tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

}  // namespace powercomm
