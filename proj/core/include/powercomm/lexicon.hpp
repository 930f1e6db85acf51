#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace powercomm {

// Hedge phrase lists. Entries are lowercase, 1-4 tokens, stored as
// space-joined token sequences ("i guess", "sort of").
struct HedgeLexicon {
  std::set<std::string> propositional;
  std::set<std::string> relational;
};

// All word lists used by the text pipeline and the belief rules.
// The defaults are compiled in; any list can be overridden from a
// directory of line-delimited UTF-8 files (one entry per line, '#'
// comments allowed). File names are fixed, see kLexiconFiles.
struct Lexicons {
  std::set<std::string> abbreviations;      // sentence-splitter protection  (abbreviations.txt)
  std::map<std::string, std::string> closed_class;  // word -> coarse tag name (closed_class.txt, "word<TAB>TAG")
  std::set<std::string> verbs;              // common verb base forms        (verbs.txt)
  std::set<std::string> adjectives;         // common adjectives             (adjectives.txt)
  std::set<std::string> adverbs;            // common adverbs                (adverbs.txt)
  std::map<std::string, std::string> irregular_lemmas;  // surface -> lemma  (irregular_lemmas.txt, "surface<TAB>lemma")
  HedgeLexicon hedges;                      // hedges_propositional.txt / hedges_relational.txt
  std::set<std::string> report_predicates;  // report_predicates.txt
  std::set<std::string> desire_predicates;  // desire_predicates.txt ("would like" as phrase)
  std::set<std::string> weak_belief_predicates;  // weak_belief_predicates.txt
  std::set<std::string> stative_verbs;      // stative_verbs.txt
  std::set<std::string> greetings;          // greetings.txt (dialog-act CONVENTIONAL cues)
  std::set<std::string> urgency_cues;       // urgency_cues.txt (ODP cues, phrases allowed)

  static Lexicons builtin();

  // Loads overrides from a directory. Files that are absent keep the
  // builtin entries; files that are present replace the whole list.
  static Lexicons load_dir(const std::string& dir);

  // Writes every list to dir in the load_dir format.
  void save_dir(const std::string& dir) const;

  bool operator==(const Lexicons&) const = default;
};

// Fixed file names understood by load_dir/save_dir.
extern const std::vector<std::string> kLexiconFiles;

}  // namespace powercomm
