#include "powercomm/lexicon.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace powercomm {
namespace {

std::set<std::string> make_set(std::initializer_list<const char*> items) {
  std::set<std::string> out;
  for (const char* s : items) out.insert(s);
  return out;
}

}  // namespace

const std::vector<std::string> kLexiconFiles = {
    "abbreviations.txt",
    "closed_class.txt",
    "verbs.txt",
    "adjectives.txt",
    "adverbs.txt",
    "irregular_lemmas.txt",
    "hedges_propositional.txt",
    "hedges_relational.txt",
    "report_predicates.txt",
    "desire_predicates.txt",
    "weak_belief_predicates.txt",
    "stative_verbs.txt",
    "greetings.txt",
    "urgency_cues.txt",
};

Lexicons Lexicons::builtin() {
  Lexicons lx;

  lx.abbreviations = make_set({
      "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "etc", "inc",
      "corp", "ltd", "co", "dept", "no", "vol", "fig", "approx", "appt",
      "apt", "ave", "blvd", "capt", "col", "gen", "gov", "lt", "rev", "sgt",
      "univ", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
      "oct", "nov", "dec", "mon", "tue", "tues", "wed", "thu", "thurs",
      "fri", "sat", "sun", "a.m", "p.m", "e.g", "i.e", "u.s",
  });

  auto& cc = lx.closed_class;
  // Pronouns.
  for (const char* w : {"i", "you", "he", "she", "it", "we", "they", "me",
                        "him", "her", "us", "them", "myself", "yourself",
                        "himself", "herself", "itself", "ourselves",
                        "yourselves", "themselves", "mine", "yours", "hers",
                        "ours", "theirs", "someone", "anyone", "everyone",
                        "somebody", "anybody", "everybody", "nobody",
                        "something", "anything", "everything", "nothing"})
    cc[w] = "PRON";
  // Determiners (possessives included: for our purposes they pattern with
  // determiners, not with subject pronouns).
  for (const char* w : {"the", "a", "an", "this", "that", "these", "those",
                        "each", "every", "some", "any", "no", "all", "both",
                        "either", "neither", "much", "many", "few", "several",
                        "most", "another", "such", "my", "your", "his", "its",
                        "our", "their"})
    cc[w] = "DET";
  // Prepositions.
  for (const char* w : {"of", "in", "on", "at", "by", "for", "with", "about",
                        "against", "between", "into", "through", "during",
                        "before", "after", "above", "below", "from", "up",
                        "down", "out", "off", "over", "under", "near",
                        "across", "along", "around", "behind", "beside",
                        "beyond", "despite", "except", "inside", "outside",
                        "past", "per", "toward", "towards", "upon", "within",
                        "without", "via", "until", "till", "than", "as"})
    cc[w] = "PREP";
  // Conjunctions and subordinators.
  for (const char* w : {"and", "but", "or", "nor", "so", "yet", "because",
                        "although", "though", "while", "whereas", "unless",
                        "if", "since", "when", "whenever", "once", "whether"})
    cc[w] = "CONJ";
  // Modals.
  for (const char* w : {"can", "could", "may", "might", "must", "shall",
                        "should", "will", "would", "ought", "'ll", "'d"})
    cc[w] = "MODAL";
  cc["to"] = "TO";
  // Wh words (question openers; "when" stays CONJ, the splitter's "?" rule
  // still catches questions it opens).
  for (const char* w : {"who", "whom", "whose", "what", "which", "where",
                        "why", "how"})
    cc[w] = "WH";
  // Auxiliary and copular forms.
  for (const char* w : {"am", "is", "are", "was", "were", "be", "been",
                        "being", "do", "does", "did", "done", "doing",
                        "have", "has", "had", "having", "'m", "'re", "'s",
                        "'ve"})
    cc[w] = "VERB";
  // Function adverbs, negation, interjection-like fillers.
  for (const char* w : {"not", "n't", "never", "here", "there", "now",
                        "then", "very", "too", "also", "just", "only",
                        "quite", "rather", "really", "still", "already",
                        "soon", "again", "always", "often", "sometimes",
                        "ever", "even", "please"})
    cc[w] = "ADV";
  for (const char* w : {"yes", "yeah", "ok", "okay", "hi", "hello", "hey",
                        "thanks", "regards", "sincerely", "cheers"})
    cc[w] = "OTHER";
  // Spelled-out numbers.
  for (const char* w : {"one", "two", "three", "four", "five", "six",
                        "seven", "eight", "nine", "ten", "hundred",
                        "thousand", "million", "billion"})
    cc[w] = "NUM";

  lx.verbs = make_set({
      "accept",      "acknowledge", "add",        "address",    "advise",
      "agree",       "aim",         "allow",      "analyze",    "announce",
      "apologize",   "appear",      "apply",      "appreciate", "approve",
      "arrange",     "arrive",      "ask",        "assess",     "assign",
      "assume",      "attach",      "attempt",    "attend",     "become",
      "begin",       "believe",     "book",       "bring",      "build",
      "buy",         "call",        "cancel",     "care",       "change",
      "check",       "claim",       "clarify",    "close",      "come",
      "commit",      "compare",     "complete",   "confirm",    "consider",
      "contact",     "contain",     "continue",   "coordinate", "copy",
      "cost",        "create",      "cut",        "decide",     "declare",
      "decrease",    "delay",       "delete",     "deliver",    "demand",
      "deny",        "depart",      "depend",     "describe",   "deserve",
      "deploy",      "discuss",     "doubt",      "draft",      "drive",
      "email",       "ensure",      "escalate",   "estimate",   "execute",
      "exist",       "expand",      "expect",     "expedite",   "explain",
      "extend",      "fail",        "fall",       "fax",        "feel",
      "figure",      "file",        "fill",       "find",       "finish",
      "fit",         "fix",         "fly",        "follow",     "forget",
      "forward",     "get",         "give",       "go",         "grow",
      "guess",       "handle",      "happen",     "hate",       "hear",
      "help",        "highlight",   "hold",       "hope",       "imagine",
      "implement",   "improve",     "include",    "increase",   "indicate",
      "insist",      "install",     "intend",     "involve",    "join",
      "keep",        "know",        "lead",       "learn",      "leave",
      "let",         "like",        "live",       "look",       "lose",
      "love",        "make",        "manage",     "matter",     "mean",
      "meet",        "mention",     "monitor",    "move",       "need",
      "note",        "notify",      "occur",      "offer",      "open",
      "oppose",      "outline",     "owe",        "own",        "pay",
      "plan",        "play",        "postpone",   "prefer",     "prepare",
      "presume",     "print",       "proceed",    "process",    "promise",
      "propose",     "provide",     "put",        "raise",      "reach",
      "read",        "receive",     "reckon",     "recommend",  "reduce",
      "refer",       "regret",      "reject",     "relate",     "remain",
      "remember",    "remind",      "remove",     "reply",      "report",
      "request",     "require",     "resemble",   "resolve",    "respond",
      "return",      "review",      "revise",     "run",        "save",
      "say",         "schedule",    "see",        "seek",       "seem",
      "sell",        "send",        "serve",      "set",        "share",
      "show",        "sign",        "sit",        "sound",      "speak",
      "spend",       "stand",       "start",      "state",      "stay",
      "stop",        "submit",      "succeed",    "suggest",    "summarize",
      "support",     "suppose",     "suspect",    "take",       "talk",
      "teach",       "tell",        "test",       "thank",      "think",
      "track",       "travel",      "try",        "understand", "update",
      "use",         "verify",      "visit",      "wait",       "walk",
      "want",        "waste",       "watch",      "win",        "wish",
      "work",        "worry",       "write",
  });

  lx.adjectives = make_set({
      "able",        "acceptable",  "accurate",   "appropriate", "available",
      "aware",       "bad",         "big",        "busy",        "capable",
      "certain",     "clear",       "closed",     "comfortable", "complete",
      "concerned",   "confident",   "correct",    "critical",    "current",
      "detailed",    "different",   "difficult",  "due",         "early",
      "easy",        "effective",   "efficient",  "empty",       "false",
      "final",       "fine",        "first",      "free",        "full",
      "glad",        "good",        "great",      "happy",       "hard",
      "helpful",     "high",        "important",  "incomplete",  "incorrect",
      "interested",  "interesting", "key",        "large",       "last",
      "late",        "likely",      "long",       "low",         "major",
      "minor",       "necessary",   "new",        "next",        "nice",
      "old",         "outstanding", "pending",    "possible",    "previous",
      "quick",       "ready",       "reasonable", "recent",      "right",
      "same",        "second",      "short",      "significant", "similar",
      "simple",      "slow",        "small",      "sorry",       "sure",
      "third",       "true",        "unclear",    "unlikely",    "urgent",
      "useful",      "wrong",
  });

  lx.adverbs = make_set({
      "actually",     "ahead",        "almost",      "apparently",
      "approximately","away",         "back",        "basically",
      "briefly",      "carefully",    "certainly",   "clearly",
      "closely",      "currently",    "definitely",  "directly",
      "especially",   "finally",      "forward",     "generally",
      "hopefully",    "immediately",  "maybe",       "nearly",
      "normally",     "obviously",    "particularly","perhaps",
      "possibly",     "presumably",   "previously",  "probably",
      "promptly",     "quickly",      "recently",    "roughly",
      "shortly",      "slowly",       "specifically","today",
      "together",     "tomorrow",     "tonight",     "typically",
      "unfortunately","urgently",     "usually",     "yesterday",
  });

  auto& ir = lx.irregular_lemmas;
  ir = {
      {"am", "be"},        {"is", "be"},        {"are", "be"},
      {"was", "be"},       {"were", "be"},      {"been", "be"},
      {"being", "be"},     {"'m", "be"},        {"'re", "be"},
      {"'s", "be"},        {"has", "have"},     {"had", "have"},
      {"having", "have"},  {"'ve", "have"},     {"does", "do"},
      {"did", "do"},       {"done", "do"},      {"ate", "eat"},
      {"eaten", "eat"},    {"became", "become"},{"began", "begin"},
      {"begun", "begin"},  {"bought", "buy"},   {"broke", "break"},
      {"broken", "break"}, {"brought", "bring"},{"built", "build"},
      {"came", "come"},    {"caught", "catch"}, {"chose", "choose"},
      {"chosen", "choose"},{"dealt", "deal"},   {"drew", "draw"},
      {"drawn", "draw"},   {"drove", "drive"},  {"driven", "drive"},
      {"fell", "fall"},    {"fallen", "fall"},  {"felt", "feel"},
      {"flew", "fly"},     {"flown", "fly"},    {"forgot", "forget"},
      {"forgotten", "forget"}, {"found", "find"}, {"gave", "give"},
      {"given", "give"},   {"gone", "go"},      {"got", "get"},
      {"gotten", "get"},   {"grew", "grow"},    {"grown", "grow"},
      {"heard", "hear"},   {"held", "hold"},    {"kept", "keep"},
      {"knew", "know"},    {"known", "know"},   {"laid", "lay"},
      {"led", "lead"},     {"left", "leave"},   {"lost", "lose"},
      {"made", "make"},    {"meant", "mean"},   {"met", "meet"},
      {"paid", "pay"},     {"ran", "run"},      {"risen", "rise"},
      {"rose", "rise"},    {"said", "say"},     {"sang", "sing"},
      {"sat", "sit"},      {"saw", "see"},      {"seen", "see"},
      {"sent", "send"},    {"shaken", "shake"}, {"shook", "shake"},
      {"showed", "show"},  {"shown", "show"},   {"sold", "sell"},
      {"spent", "spend"},  {"spoke", "speak"},  {"spoken", "speak"},
      {"stood", "stand"},  {"struck", "strike"},{"stuck", "stick"},
      {"sung", "sing"},    {"swam", "swim"},    {"swum", "swim"},
      {"taken", "take"},   {"taught", "teach"}, {"threw", "throw"},
      {"thrown", "throw"}, {"thought", "think"},{"told", "tell"},
      {"took", "take"},    {"tore", "tear"},    {"torn", "tear"},
      {"understood", "understand"}, {"went", "go"}, {"woke", "wake"},
      {"woken", "wake"},   {"won", "win"},      {"wore", "wear"},
      {"worn", "wear"},    {"wrote", "write"},
  };

  // The cited hedge inventories are not published; this is a documented
  // stand-in covering the usual epistemic markers.
  lx.hedges.propositional = make_set({
      "i think",        "i believe",      "i guess",      "i suppose",
      "i suspect",      "i assume",       "i imagine",    "i reckon",
      "i bet",          "i feel",         "we think",     "we believe",
      "we guess",       "we suppose",     "we assume",    "in my opinion",
      "to my knowledge","as far as i know", "it seems",   "it appears",
      "apparently",     "probably",       "perhaps",      "maybe",
      "possibly",       "presumably",     "supposedly",   "allegedly",
      "not sure",       "i wonder",
  });
  lx.hedges.relational = make_set({
      "sort of",     "kind of",      "more or less", "basically",
      "roughly",     "approximately","somewhat",     "pretty much",
      "virtually",   "essentially",  "almost",       "about",
      "around",      "nearly",
  });

  lx.report_predicates = make_set({
      "say", "claim", "think", "believe", "report", "suggest", "tell",
  });
  lx.desire_predicates = make_set({
      "need", "want", "hope", "plan", "intend", "ask", "request",
      "would like",
  });
  lx.weak_belief_predicates = make_set({"guess", "suppose", "suspect"});

  lx.stative_verbs = make_set({
      "be",       "know",     "believe",  "think",    "understand",
      "want",     "need",     "like",     "love",     "hate",
      "prefer",   "seem",     "appear",   "belong",   "contain",
      "cost",     "depend",   "deserve",  "exist",    "fit",
      "have",     "hear",     "involve",  "matter",   "mean",
      "owe",      "own",      "remember", "resemble", "see",
      "sound",    "suppose",  "agree",    "feel",     "doubt",
      "expect",   "hope",     "wish",
  });

  lx.greetings = make_set({
      "hi",           "hello",        "hey",           "dear",
      "greetings",    "good morning", "good afternoon","good evening",
      "thanks",       "thank you",    "many thanks",   "regards",
      "best regards", "kind regards", "warm regards",  "sincerely",
      "cheers",       "best",         "take care",     "talk soon",
      "yours truly",
  });

  lx.urgency_cues = make_set({
      "asap",        "as soon as possible", "urgent",        "urgently",
      "immediately", "right away",          "must",          "deadline",
      "no later than", "end of day",        "eod",           "cob",
      "by tomorrow", "by today",            "need you to",   "promptly",
      "at your earliest convenience",       "time sensitive","overdue",
  });

  return lx;
}

namespace {

void write_set(const std::filesystem::path& p, const std::set<std::string>& s) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  for (const auto& e : s) out << e << '\n';
}

void write_map(const std::filesystem::path& p,
               const std::map<std::string, std::string>& m) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  for (const auto& [k, v] : m) out << k << '\t' << v << '\n';
}

bool read_lines(const std::filesystem::path& p,
                std::vector<std::string>& lines) {
  std::ifstream in(p);
  if (!in) return false;
  lines.clear();
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Trim outer whitespace.
    size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t");
    line = line.substr(b, e - b + 1);
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return true;
}

bool load_set(const std::filesystem::path& p, std::set<std::string>& s) {
  std::vector<std::string> lines;
  if (!read_lines(p, lines)) return false;
  s.clear();
  for (auto& l : lines) s.insert(l);
  return true;
}

bool load_map(const std::filesystem::path& p,
              std::map<std::string, std::string>& m) {
  std::vector<std::string> lines;
  if (!read_lines(p, lines)) return false;
  m.clear();
  for (auto& l : lines) {
    size_t tab = l.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("expected '<key>\\t<value>' in " + p.string() +
                               ": " + l);
    m[l.substr(0, tab)] = l.substr(tab + 1);
  }
  return true;
}

}  // namespace

Lexicons Lexicons::load_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw std::runtime_error("lexicon directory not found: " + dir);
  Lexicons lx = builtin();
  fs::path d(dir);
  load_set(d / "abbreviations.txt", lx.abbreviations);
  load_map(d / "closed_class.txt", lx.closed_class);
  load_set(d / "verbs.txt", lx.verbs);
  load_set(d / "adjectives.txt", lx.adjectives);
  load_set(d / "adverbs.txt", lx.adverbs);
  load_map(d / "irregular_lemmas.txt", lx.irregular_lemmas);
  load_set(d / "hedges_propositional.txt", lx.hedges.propositional);
  load_set(d / "hedges_relational.txt", lx.hedges.relational);
  load_set(d / "report_predicates.txt", lx.report_predicates);
  load_set(d / "desire_predicates.txt", lx.desire_predicates);
  load_set(d / "weak_belief_predicates.txt", lx.weak_belief_predicates);
  load_set(d / "stative_verbs.txt", lx.stative_verbs);
  load_set(d / "greetings.txt", lx.greetings);
  load_set(d / "urgency_cues.txt", lx.urgency_cues);
  return lx;
}

void Lexicons::save_dir(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  fs::path d(dir);
  write_set(d / "abbreviations.txt", abbreviations);
  write_map(d / "closed_class.txt", closed_class);
  write_set(d / "verbs.txt", verbs);
  write_set(d / "adjectives.txt", adjectives);
  write_set(d / "adverbs.txt", adverbs);
  write_map(d / "irregular_lemmas.txt", irregular_lemmas);
  write_set(d / "hedges_propositional.txt", hedges.propositional);
  write_set(d / "hedges_relational.txt", hedges.relational);
  write_set(d / "report_predicates.txt", report_predicates);
  write_set(d / "desire_predicates.txt", desire_predicates);
  write_set(d / "weak_belief_predicates.txt", weak_belief_predicates);
  write_set(d / "stative_verbs.txt", stative_verbs);
  write_set(d / "greetings.txt", greetings);
  write_set(d / "urgency_cues.txt", urgency_cues);
}

}  // namespace powercomm
