#ifndef CORESOLVE_COORDINATOR_H_
#define CORESOLVE_COORDINATOR_H_

#include <functional>
#include <string>
#include <vector>

#include "coresolve/model.h"
#include "coresolve/trace.h"

namespace coresolve {

// Counts returned by one module pass.
struct PassProgress {
  int decided = 0;  // RESOLVE/ATTACH/UNRESOLVABLE/UNATTACHED actions
  int skipped = 0;
};

// The coordinator only sees these two interfaces; any resolver or
// attachment procedure with a skip predicate can be plugged in.
class AnaphoraModule {
 public:
  virtual ~AnaphoraModule() = default;
  virtual PassProgress run_pass(AnnotatedSentence &s, const DiscourseState &d,
                                int pass_number, Trace &trace) = 0;
};

class AttachmentModule {
 public:
  virtual ~AttachmentModule() = default;
  virtual PassProgress run_pass(AnnotatedSentence &s, int pass_number,
                                Trace &trace) = 0;
};

// Focus-based pronoun resolver (anaphora.h).
class FocusAnaphoraModule : public AnaphoraModule {
 public:
  explicit FocusAnaphoraModule(const SemanticLexicon &lex) : lex_(lex) {}
  PassProgress run_pass(AnnotatedSentence &s, const DiscourseState &d,
                        int pass_number, Trace &trace) override;

 private:
  const SemanticLexicon &lex_;
};

// Rule-table PP attachment (attachment.h).
class RuleAttachmentModule : public AttachmentModule {
 public:
  RuleAttachmentModule(const AttachmentRuleTable &rules,
                       const SemanticLexicon &lex)
      : rules_(rules), lex_(lex) {}
  PassProgress run_pass(AnnotatedSentence &s, int pass_number,
                        Trace &trace) override;

 private:
  const AttachmentRuleTable &rules_;
  const SemanticLexicon &lex_;
};

enum class Outcome { kComplete, kDeadlocked };

std::string_view outcome_name(Outcome o);

struct SentenceResult {
  AnnotatedSentence state;  // final
  Trace trace;
  int module_calls = 0;     // executed passes
  Outcome outcome = Outcome::kComplete;
  std::vector<std::string> deadlocked;  // ids marked "deadlock"
};

// Alternates anaphora and attachment passes until nothing is pending or
// skipped. The first two passes always run. Afterwards the open count is
// checked before every pass, so no trailing vacuous pass is executed. A
// full cycle with no decisions stops the loop and marks the survivors
// unresolvable/unattached("deadlock").
class Coordinator {
 public:
  Coordinator(AnaphoraModule &anaphora, AttachmentModule &attachment)
      : anaphora_(anaphora), attachment_(attachment) {}

  // `initial` must already be in its initial state.
  SentenceResult run(const AnnotatedSentence &initial,
                     const DiscourseState &d) const;

 private:
  AnaphoraModule &anaphora_;
  AttachmentModule &attachment_;
};

// Marks every open decision as failed with reason "deadlock" and returns
// their ids in textual order (anaphors first, then PPs).
std::vector<std::string> mark_deadlocked(AnnotatedSentence &s);

// Validates, builds the initial state and runs the default modules.
// Throws ValidationError.
SentenceResult resolve_sentence(const AnnotatedSentence &s,
                                const DiscourseState &d,
                                const AttachmentRuleTable &rules,
                                const SemanticLexicon &lex);

// Entities a finished sentence contributes to the focus list, most salient
// first. `before` is the state the sentence was resolved against.
using SalienceOrder = std::function<std::vector<FocusEntry>(
    const AnnotatedSentence &final_state, const DiscourseState &before)>;

// Subject first, then the remaining entities in textual order. Resolved
// pronouns contribute their antecedent; unresolved ones contribute nothing.
std::vector<FocusEntry> subject_first_salience(
    const AnnotatedSentence &final_state, const DiscourseState &before);

DiscourseState update_discourse(const DiscourseState &before,
                                const AnnotatedSentence &final_state,
                                const SalienceOrder &order);

struct DocumentResult {
  std::vector<SentenceResult> sentences;
  DiscourseState discourse;  // after the last sentence
};

// Sentence by sentence, threading the discourse state. Earlier sentences
// are never reopened. Throws ValidationError naming the failing sentence.
DocumentResult resolve_document(const Document &doc,
                                const AttachmentRuleTable &rules,
                                const SemanticLexicon &lex,
                                const SalienceOrder &order =
                                    subject_first_salience);

struct CycleMetrics {
  int module_calls = 0;
  std::vector<int> progress_per_pass;  // terminal actions, index = pass - 1
  std::vector<int> skips_per_pass;
  int anaphora_decisions = 0;
  int attachment_decisions = 0;
  // Full anaphora+attachment rounds, counting a trailing lone pass.
  int cycles() const { return (module_calls + 1) / 2; }
};

// Pure summary of a result's trace. Throws std::logic_error if the trace
// mentions a pass beyond module_calls.
CycleMetrics cycle_metrics(const SentenceResult &r);

}  // namespace coresolve

#endif  // CORESOLVE_COORDINATOR_H_
