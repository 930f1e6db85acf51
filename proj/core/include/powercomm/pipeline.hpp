#pragma once

#include <string>
#include <vector>

#include "powercomm/belief.hpp"
#include "powercomm/corpus.hpp"
#include "powercomm/stats.hpp"

namespace powercomm {

// Command-line entry point. `args` excludes the program name (subcommand
// first). Returns the process exit code: 0 on success, 1 on validation
// errors (bad flags, missing inputs), 2 on runtime errors.
int run(const std::vector<std::string>& args);

const char* tool_version();

// One hypothesis-suite row per defined participant side of each related
// interacting participant pair, across all splits: the bridge between a
// loaded corpus and run_hypothesis_suite.
std::vector<ParticipantBelief> participant_rows(const Corpus& corpus,
                                                const BeliefTagger& tagger);

}  // namespace powercomm
