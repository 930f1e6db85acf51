#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powercomm/corpus.hpp"

namespace powercomm {

// Commitment-head emission rates per 100 tokens for one hierarchy role.
struct RoleRates {
  double cb = 6.0;
  double ncb = 1.0;
  double rob = 0.75;
  double na = 3.0;

  bool operator==(const RoleRates&) const = default;
};

struct SynthConfig {
  int n_threads = 200;
  int min_participants = 2;
  int max_participants = 3;
  int hierarchy_depth = 2;  // distinct dominance levels per thread
  int min_messages = 5;
  int max_messages = 10;
  int min_sentences = 6;  // sentences per message
  int max_sentences = 12;
  RoleRates superior;     // defaults: cb 6.0, ncb 1.0, rob 0.75, na 3.0
  RoleRates subordinate;  // defaults below mirror the observed effect sizes
  SplitRatios ratios;
  std::uint64_t seed = 7;

  bool operator==(const SynthConfig&) const = default;
};

// Default planted effects: subordinates emit 1.48x the superiors' NCB rate
// and 1.653x their ROB rate; superiors' NA rate is elevated; CB is equal.
SynthConfig default_synth_config();

// Identical role rates on both sides: the all-null calibration corpus.
SynthConfig null_synth_config();

// True per-participant emission record written alongside a generated corpus:
// what the generator planted, before any tagging.
struct BookkeepingRow {
  std::string thread_id;
  std::string participant;
  std::string role;  // "superior" or "subordinate"
  std::int64_t cb = 0;
  std::int64_t ncb = 0;
  std::int64_t rob = 0;
  std::int64_t na = 0;
  std::int64_t tokens = 0;

  bool operator==(const BookkeepingRow&) const = default;
};

struct SynthResult {
  Corpus corpus;
  std::vector<BookkeepingRow> bookkeeping;
};

// Assembles threads from a fixed sentence-template bank whose commitment
// labels under the rule tagger are known by construction, with per-role
// template probabilities solved so the configured per-100-token rates hold
// in expectation. Deterministic under config.seed (counter-based per-thread
// streams). Throws std::invalid_argument on invalid structure ranges or
// infeasible rates.
SynthResult generate_corpus(const SynthConfig& config);

// Two-participant threads where the hierarchy signal is carried exclusively
// by the commitment context of shared lemmas: superiors use the plain frame
// with one verb of a contrast pair and the conditional frame with the other,
// subordinates swap them, and every message pairs both frames. Plain lemma
// n-grams are therefore identical across roles while label-tagged ones
// separate perfectly.
SynthResult generate_belief_contrast_corpus(const SynthConfig& config);

// Sidecar format: "thread_id participant role cb ncb rob na tokens" (TSV).
void save_bookkeeping(const std::vector<BookkeepingRow>& rows,
                      const std::string& path);
std::vector<BookkeepingRow> load_bookkeeping(const std::string& path);

}  // namespace powercomm
