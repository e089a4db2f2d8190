#ifndef CORESOLVE_FUZZ_H_
#define CORESOLVE_FUZZ_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coresolve/model.h"

namespace coresolve {

// Vocabulary, class set and rule table shared by generated sentences.
struct FuzzWorld {
  SemanticLexicon lex;
  AttachmentRuleTable rules;
};

FuzzWorld make_fuzz_world(uint64_t seed);

struct FuzzLimits {
  int max_anaphors = 8;
  int max_pps = 8;
  int max_sentences = 3;  // per document
  int max_elements = 18;  // phrases after the subject
};

// A well-formed random document. Every sentence opens with a singular
// organization subject, and plural pronouns only appear after a plural
// candidate, so every anaphor has an antecedent candidate. Some PP objects
// are separated from their preposition or stretched over later phrases,
// which is what produces cyclic dependencies.
Document random_document(std::mt19937_64 &rng, const FuzzWorld &world,
                         const std::string &id, const FuzzLimits &limits = {});

struct FuzzSummary {
  int documents = 0;
  int sentences = 0;
  int cyclic = 0;              // sentences whose dependency graph has a cycle
  int oracle_diffs = 0;        // sentences where engine != oracle
  int schedule_diffs = 0;      // module_calls differs from the graph's count
  int bound_violations = 0;    // module_calls > 2*(A+P+1)
  int redundancy_violations = 0;
  int cycle_outcome_diffs = 0; // cyclic but complete, or acyclic but stuck
  int invariant_violations = 0;
  int max_module_calls = 0;
  std::vector<std::string> failures;  // first few messages

  bool ok() const {
    return oracle_diffs + schedule_diffs + bound_violations +
               redundancy_violations + cycle_outcome_diffs +
               invariant_violations ==
           0;
  }
  std::string to_string() const;
};

// Generates documents until `sentences` sentences have been checked,
// running the engine and the oracle on each.
FuzzSummary run_fuzz(int sentences, uint64_t seed,
                     const FuzzLimits &limits = {});

}  // namespace coresolve

#endif  // CORESOLVE_FUZZ_H_
