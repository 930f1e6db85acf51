#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace powercomm {

struct Message {
  std::string id;
  std::string sender;
  std::vector<std::string> to;
  std::vector<std::string> cc;
  std::int64_t timestamp = 0;  // epoch seconds
  std::string subject;
  std::string body;
  std::optional<std::string> in_reply_to;

  bool operator==(const Message&) const = default;
};

struct Thread {
  std::string id;
  std::vector<Message> messages;  // sorted by timestamp ascending

  bool operator==(const Thread&) const = default;
};

enum class Split { TRAIN, DEV, TEST };

const char* to_string(Split s);
Split split_from_name(const std::string& name);  // throws on unknown

struct DominanceTuple {
  std::string superior;
  std::string subordinate;

  auto operator<=>(const DominanceTuple&) const = default;
};

enum class Gold { P1_SUPERIOR, P1_SUBORDINATE };

const char* to_string(Gold g);

// Related interacting participant pair: within one thread, a pair that
// exchanged at least one message and appears in the dominance tuples.
// p1 < p2 lexicographically.
struct Ripp {
  std::string thread_id;
  std::string p1;
  std::string p2;
  Gold gold = Gold::P1_SUPERIOR;
  Split split = Split::TRAIN;

  bool operator==(const Ripp&) const = default;
};

struct SkippedThread {
  std::string id;  // may be empty when the record had no readable id
  std::string reason;

  bool operator==(const SkippedThread&) const = default;
};

struct SplitRatios {
  double train = 0.6;
  double dev = 0.2;
  double test = 0.2;
};

struct Corpus {
  std::vector<Thread> threads;
  std::vector<DominanceTuple> dominance;
  std::map<std::string, Split> splits;  // covers every loaded thread
  std::vector<SkippedThread> skipped;
  std::vector<std::string> warnings;  // non-thread anomalies (dominance dupes etc.)
};

struct CorpusStats {
  // Indexed by Split value: [TRAIN, DEV, TEST].
  std::array<std::int64_t, 3> threads{0, 0, 0};
  std::array<std::int64_t, 3> ripps{0, 0, 0};

  bool operator==(const CorpusStats&) const = default;
};

// Deterministic hash-based split assignment used when neither the corpus
// record nor a splits file names one.
Split split_for_thread(const std::string& thread_id, const SplitRatios& r);

// Loads a corpus from a newline-delimited file of thread records (one JSON
// object per line, schema version 1). Malformed threads are skipped with a
// reason. dominance_path ("superior<TAB>subordinate" per line) and
// splits_path ("thread_id<TAB>SPLIT" per line) are optional; splits-file
// assignments override record fields, which override the hash rule.
Corpus load_corpus(const std::string& corpus_path,
                   const std::string& dominance_path = "",
                   const std::string& splits_path = "",
                   const SplitRatios& ratios = {});

// Writes the corpus back out in the load_corpus format. Thread records
// carry their split assignment inline; skipped/warnings are not persisted.
void save_corpus(const Corpus& corpus, const std::string& corpus_path,
                 const std::string& dominance_path,
                 const std::string& splits_path = "");

// Pairs of thread participants with >=1 exchanged message (sender vs
// to/cc, either direction) and a dominance tuple in either orientation.
// Output sorted by (p1, p2); each qualifying pair appears once.
std::vector<Ripp> extract_ripps(const Thread& thread,
                                const std::vector<DominanceTuple>& dominance,
                                Split split);

std::vector<Ripp> extract_all_ripps(const Corpus& corpus);

CorpusStats corpus_stats(const Corpus& corpus);

// Two-row table (threads, RIPPs) by split, aligned for terminal output.
std::string format_stats_table(const CorpusStats& stats);

}  // namespace powercomm
