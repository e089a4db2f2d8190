#ifndef CORESOLVE_ANAPHORA_H_
#define CORESOLVE_ANAPHORA_H_

#include <string>
#include <vector>

#include "coresolve/model.h"
#include "coresolve/trace.h"

namespace coresolve {

// Outcome of a skip predicate. `blocker` is the id of the item that forces
// postponement; `reason` is the trace detail.
struct SkipDecision {
  bool skip = false;
  std::string blocker;
  std::string reason;

  static SkipDecision proceed() { return {}; }
};

// An anaphor waits while an ambiguous PP to its left is still open, unless
// the pronoun sits inside that PP's own object. The leftmost blocker is
// reported as "blocked-by:<pp id>".
SkipDecision skip_anaphor(const Anaphor &a, const AnnotatedSentence &s);

enum class Provenance { kIntraSentential, kFocusList };

std::string_view provenance_name(Provenance p);

struct Candidate {
  std::string entity;
  int rank = 0;           // 3 focus head, 2 subject, 1 other intra, 0 focus
  Provenance provenance = Provenance::kIntraSentential;
  int mention = 0;        // head token for intra-sentential candidates
  int start = 0;
  int focus_index = 0;    // position in the focus list otherwise
  std::string semantic_class;
  std::string head_lemma;
};

// Strict total order: rank descending, then recency (later mention first;
// intra-sentential mentions are later than anything in the focus list).
bool ranks_before(const Candidate &a, const Candidate &b);

struct CandidateSet {
  std::string anaphor;
  std::vector<Candidate> candidates;  // best first
  // No preceding candidate, but a following NP would pass the filters.
  bool following_plausible = false;
};

// Candidates are the non-pronoun NPs ending before the pronoun, the
// antecedents of already-resolved pronouns, and the focus list, filtered by
// agreement and by the kind-specific class filter:
//   possessive    -> class in lex.possessor_classes
//   demonstrative -> common-noun head, number agreement only, recency only
CandidateSet candidate_antecedents(const Anaphor &a,
                                   const AnnotatedSentence &s,
                                   const DiscourseState &d,
                                   const SemanticLexicon &lex);

struct Resolution {
  bool resolved = false;
  Candidate antecedent;  // valid when resolved
  std::string reason;    // "no-candidate" or "cataphor-out-of-scope"
};

Resolution resolve_anaphor(const Anaphor &a, const CandidateSet &c);

struct AnaphoraReport {
  int resolved = 0;
  int skipped = 0;
  int unresolvable = 0;

  int progress() const { return resolved + unresolvable; }
  bool empty() const { return progress() + skipped == 0; }
};

// Visits every open anaphor in textual order, applying skip and resolve.
// Appends one event per visit to `trace`.
AnaphoraReport anaphora_pass(AnnotatedSentence &s, const DiscourseState &d,
                             const SemanticLexicon &lex, int pass_number,
                             Trace &trace);

}  // namespace coresolve

#endif  // CORESOLVE_ANAPHORA_H_
