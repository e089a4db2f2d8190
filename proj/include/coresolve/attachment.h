#ifndef CORESOLVE_ATTACHMENT_H_
#define CORESOLVE_ATTACHMENT_H_

#include <optional>
#include <string>

#include "coresolve/anaphora.h"
#include "coresolve/model.h"
#include "coresolve/trace.h"

namespace coresolve {

// A PP waits while an open anaphor sits inside its object
// ("object-contains-anaphor:<id>") or anywhere to its left
// ("preceded-by-anaphor:<id>"). The object test runs first; within a test
// the leftmost anaphor is cited.
SkipDecision skip_pp(const PrepPhrase &p, const AnnotatedSentence &s);

// Class of the PP object. A pronoun object takes the class copied from its
// antecedent; an object pronoun that was found unresolvable has no class
// (nullopt). Throws ConfigError when a non-pronoun object has no class and
// no lexicon entry, and std::logic_error when called on a PP whose object
// pronoun is still open.
std::optional<std::string> object_class(const PrepPhrase &p,
                                        const AnnotatedSentence &s,
                                        const SemanticLexicon &lex);

struct AttachmentDecision {
  std::string pp;
  SiteRef chosen;
  std::optional<AttachmentRule> rule;  // nullopt: single-site default
  int score = 0;
};

struct AttachOutcome {
  bool attached = false;
  AttachmentDecision decision;  // valid when attached
  std::string reason;           // "no-rule" or "site-unavailable"
};

// Picks the highest-scoring (site, rule) match among the candidate sites
// that can still take the PP; ties go to the rightmost site, then to the
// earlier rule. Reads only the object class, the rules, the candidate sites
// and their slots. Does not modify the sentence.
AttachOutcome decide_attachment(const PrepPhrase &p, const AnnotatedSentence &s,
                                const AttachmentRuleTable &rules,
                                const SemanticLexicon &lex);

// Records the outcome: marks the PP and fills the chosen slot (frame role
// filler, or NP modifier list).
void apply_attachment(AnnotatedSentence &s, const std::string &pp_id,
                      const AttachOutcome &outcome);

// decide_attachment followed by apply_attachment.
AttachOutcome attach_pp(AnnotatedSentence &s, const std::string &pp_id,
                        const AttachmentRuleTable &rules,
                        const SemanticLexicon &lex);

struct AttachmentReport {
  int attached = 0;
  int skipped = 0;
  int unattached = 0;

  int progress() const { return attached + unattached; }
  bool empty() const { return progress() + skipped == 0; }
};

AttachmentReport attachment_pass(AnnotatedSentence &s,
                                 const AttachmentRuleTable &rules,
                                 const SemanticLexicon &lex, int pass_number,
                                 Trace &trace);

}  // namespace coresolve

#endif  // CORESOLVE_ATTACHMENT_H_
