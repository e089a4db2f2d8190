#ifndef CORESOLVE_STATS_H_
#define CORESOLVE_STATS_H_

#include <string>
#include <vector>

#include "coresolve/coordinator.h"

namespace coresolve {

// Interaction counts over resolved text.
//   case_a  anaphors with no ambiguous PP to their left
//   case_b  anaphors following at least one ambiguous PP (including one
//           whose object contains the anaphor)
//   case_c  PPs whose object contains a pronoun
struct CorpusStats {
  int documents = 0;
  int sentences = 0;
  int anaphors = 0;
  int pps = 0;
  int case_a = 0;
  int case_b = 0;
  int case_c = 0;
  int deadlocked_sentences = 0;
  long total_module_calls = 0;
  int max_module_calls = 0;

  double mean_module_calls() const {
    return sentences == 0 ? 0.0
                          : static_cast<double>(total_module_calls) / sentences;
  }

  // Associative and commutative.
  CorpusStats &merge(const CorpusStats &other);

  std::string to_string() const;

  bool operator==(const CorpusStats &) const = default;
};

CorpusStats sentence_stats(const SentenceResult &r);
CorpusStats document_stats(const DocumentResult &r);
CorpusStats corpus_stats(const std::vector<DocumentResult> &results);

}  // namespace coresolve

#endif  // CORESOLVE_STATS_H_
