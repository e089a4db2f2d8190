#include "coresolve/coordinator.h"

#include <algorithm>
#include <stdexcept>

#include "coresolve/anaphora.h"
#include "coresolve/attachment.h"

namespace coresolve {

std::string_view outcome_name(Outcome o) {
  return o == Outcome::kComplete ? "complete" : "deadlocked";
}

PassProgress FocusAnaphoraModule::run_pass(AnnotatedSentence &s,
                                           const DiscourseState &d,
                                           int pass_number, Trace &trace) {
  AnaphoraReport r = anaphora_pass(s, d, lex_, pass_number, trace);
  return {r.progress(), r.skipped};
}

PassProgress RuleAttachmentModule::run_pass(AnnotatedSentence &s,
                                            int pass_number, Trace &trace) {
  AttachmentReport r = attachment_pass(s, rules_, lex_, pass_number, trace);
  return {r.progress(), r.skipped};
}

std::vector<std::string> mark_deadlocked(AnnotatedSentence &s) {
  std::vector<std::string> ids;
  for (auto &a : s.anaphors) {
    if (!a.open()) continue;
    a.mark_unresolvable("deadlock");
    ids.push_back(a.id);
  }
  for (auto &p : s.pps) {
    if (!p.open()) continue;
    p.mark_unattached("deadlock");
    ids.push_back(p.id);
  }
  return ids;
}

SentenceResult Coordinator::run(const AnnotatedSentence &initial,
                                const DiscourseState &d) const {
  SentenceResult result;
  result.state = initial;
  AnnotatedSentence &s = result.state;
  int pass = 0;

  int cycle_progress = anaphora_.run_pass(s, d, ++pass, result.trace).decided;
  cycle_progress += attachment_.run_pass(s, ++pass, result.trace).decided;

  while (s.open_decisions() > 0) {
    if (cycle_progress == 0) {
      result.deadlocked = mark_deadlocked(s);
      result.outcome = Outcome::kDeadlocked;
      break;
    }
    cycle_progress = anaphora_.run_pass(s, d, ++pass, result.trace).decided;
    if (s.open_decisions() == 0) break;
    cycle_progress += attachment_.run_pass(s, ++pass, result.trace).decided;
  }
  result.module_calls = pass;
  return result;
}

SentenceResult resolve_sentence(const AnnotatedSentence &s,
                                const DiscourseState &d,
                                const AttachmentRuleTable &rules,
                                const SemanticLexicon &lex) {
  AnnotatedSentence initial = build_initial_state(s, lex);
  FocusAnaphoraModule anaphora(lex);
  RuleAttachmentModule attachment(rules, lex);
  return Coordinator(anaphora, attachment).run(initial, d);
}

std::vector<FocusEntry> subject_first_salience(
    const AnnotatedSentence &final_state, const DiscourseState &before) {
  std::vector<const NounPhrase *> order;
  for (const auto &np : final_state.nps) order.push_back(&np);
  std::stable_sort(order.begin(), order.end(),
                   [](const NounPhrase *a, const NounPhrase *b) {
                     if (a->subject != b->subject) return a->subject;
                     if (a->start != b->start) return a->start < b->start;
                     return a->end < b->end;
                   });

  std::vector<FocusEntry> entries;
  auto from_np = [&final_state](const NounPhrase &np) {
    return FocusEntry{np.id,           final_state.index, np.head_lemma,
                      np.semantic_class, np.agreement,    np.proper};
  };
  for (const NounPhrase *np : order) {
    if (!np->is_pronoun) {
      entries.push_back(from_np(*np));
      continue;
    }
    const Anaphor *a = final_state.anaphor_for_np(np->id);
    if (a == nullptr || a->status() != AnaphorStatus::kResolved) continue;
    if (const NounPhrase *ante = final_state.find_np(a->antecedent())) {
      entries.push_back(from_np(*ante));
    } else if (const FocusEntry *e = before.find(a->antecedent())) {
      entries.push_back(*e);
    }
  }
  return entries;
}

DiscourseState update_discourse(const DiscourseState &before,
                                const AnnotatedSentence &final_state,
                                const SalienceOrder &order) {
  DiscourseState after = before;
  after.prepend(order(final_state, before));
  return after;
}

DocumentResult resolve_document(const Document &doc,
                                const AttachmentRuleTable &rules,
                                const SemanticLexicon &lex,
                                const SalienceOrder &order) {
  ValidationReport report = validate_document(doc, lex);
  if (!report.ok()) {
    throw ValidationError("document " + doc.id + ": " + report.to_string());
  }
  DocumentResult result;
  for (const auto &s : doc.sentences) {
    SentenceResult r = resolve_sentence(s, result.discourse, rules, lex);
    result.discourse = update_discourse(result.discourse, r.state, order);
    result.sentences.push_back(std::move(r));
  }
  return result;
}

CycleMetrics cycle_metrics(const SentenceResult &r) {
  CycleMetrics m;
  m.module_calls = r.module_calls;
  m.progress_per_pass.assign(r.module_calls, 0);
  m.skips_per_pass.assign(r.module_calls, 0);
  for (const auto &e : r.trace) {
    if (e.pass_number < 1 || e.pass_number > r.module_calls) {
      throw std::logic_error("trace event in pass " +
                             std::to_string(e.pass_number) + " but only " +
                             std::to_string(r.module_calls) + " passes ran");
    }
    if (is_terminal(e.action)) {
      ++m.progress_per_pass[e.pass_number - 1];
      if (e.module == Module::kAnaphora) {
        ++m.anaphora_decisions;
      } else {
        ++m.attachment_decisions;
      }
    } else {
      ++m.skips_per_pass[e.pass_number - 1];
    }
  }
  return m;
}

}  // namespace coresolve
