#include "coresolve/attachment.h"

#include <stdexcept>

namespace coresolve {

SkipDecision skip_pp(const PrepPhrase &p, const AnnotatedSentence &s) {
  const NounPhrase *obj = s.find_np(p.object_np);
  if (obj != nullptr) {
    for (const auto &a : s.anaphors) {
      if (a.open() && obj->contains(a.position)) {
        return {true, a.id, "object-contains-anaphor:" + a.id};
      }
    }
  }
  for (const auto &a : s.anaphors) {
    if (a.position >= p.position) break;
    if (a.open()) return {true, a.id, "preceded-by-anaphor:" + a.id};
  }
  return SkipDecision::proceed();
}

std::optional<std::string> object_class(const PrepPhrase &p,
                                        const AnnotatedSentence &s,
                                        const SemanticLexicon &lex) {
  const NounPhrase *obj = s.find_np(p.object_np);
  if (obj == nullptr) {
    throw std::logic_error("pp " + p.id + ": unknown object " + p.object_np);
  }
  if (obj->is_pronoun) {
    const Anaphor *a = s.anaphor_for_np(obj->id);
    if (a == nullptr || a->open()) {
      throw std::logic_error("pp " + p.id + ": object pronoun not decided");
    }
    if (a->status() == AnaphorStatus::kResolved) return a->antecedent_class();
    return std::nullopt;
  }
  if (!obj->semantic_class.empty()) return obj->semantic_class;
  const LexEntry *entry = lex.find(obj->head_lemma);
  if (entry == nullptr || entry->semantic_class.empty()) {
    throw ConfigError("no lexicon class for lemma '" + obj->head_lemma + "'");
  }
  return entry->semantic_class;
}

namespace {

bool site_available(const SiteRef &site, const PrepPhrase &p,
                    const std::optional<std::string> &cls,
                    const AnnotatedSentence &s) {
  if (site.kind == SiteRef::Kind::kNpModifier) {
    return s.find_np(site.np) != nullptr;
  }
  const Frame *f = s.find_frame(site.frame);
  if (f == nullptr) return false;
  auto it = f->roles.find(site.role);
  if (it == f->roles.end()) return false;
  const RoleSlot &slot = it->second;
  if (slot.filler) return false;
  if (!slot.expected_classes.empty() &&
      (!cls || slot.expected_classes.count(*cls) == 0)) {
    return false;
  }
  if (!slot.admitted_prepositions.empty() &&
      slot.admitted_prepositions.count(p.preposition) == 0) {
    return false;
  }
  return true;
}

bool governs(const AttachmentRule &rule, const SiteRef &site,
             const AnnotatedSentence &s) {
  if (site.kind == SiteRef::Kind::kFrameRole) {
    const Frame *f = s.find_frame(site.frame);
    return rule.role == site.role && rule.governor == f->predicate_lemma;
  }
  const NounPhrase *np = s.find_np(site.np);
  if (rule.governor == np->head_lemma) return true;
  if (np->is_pronoun) {
    const Anaphor *a = s.anaphor_for_np(np->id);
    if (a != nullptr && a->status() == AnaphorStatus::kResolved) {
      return rule.governor == a->antecedent_head() ||
             rule.governor == a->antecedent_class();
    }
    return false;
  }
  return rule.governor == np->semantic_class;
}

}  // namespace

AttachOutcome decide_attachment(const PrepPhrase &p, const AnnotatedSentence &s,
                                const AttachmentRuleTable &rules,
                                const SemanticLexicon &lex) {
  const std::optional<std::string> cls = object_class(p, s, lex);
  AttachOutcome best;
  int best_site = -1;
  for (size_t i = 0; i < p.candidate_sites.size(); ++i) {
    const SiteRef &site = p.candidate_sites[i];
    if (!site_available(site, p, cls, s)) continue;
    for (const auto &rule : rules.rules) {
      if (!cls || rule.object_class != *cls) continue;
      if (rule.preposition != p.preposition) continue;
      if (!governs(rule, site, s)) continue;
      // Later sites win ties; within one site the first rule wins.
      bool better = best_site < 0 || rule.score > best.decision.score ||
                    (rule.score == best.decision.score &&
                     static_cast<int>(i) > best_site);
      if (better) {
        best.attached = true;
        best.decision = {p.id, site, rule, rule.score};
        best_site = static_cast<int>(i);
      }
    }
  }
  if (best.attached) return best;

  if (p.candidate_sites.size() == 1) {
    const SiteRef &only = p.candidate_sites.front();
    if (site_available(only, p, cls, s)) {
      best.attached = true;
      best.decision = {p.id, only, std::nullopt, 0};
      return best;
    }
    best.reason = "site-unavailable";
    return best;
  }
  best.reason = "no-rule";
  return best;
}

void apply_attachment(AnnotatedSentence &s, const std::string &pp_id,
                      const AttachOutcome &outcome) {
  PrepPhrase *p = nullptr;
  for (auto &candidate : s.pps) {
    if (candidate.id == pp_id) p = &candidate;
  }
  if (p == nullptr) throw std::logic_error("unknown pp " + pp_id);
  if (!outcome.attached) {
    p->mark_unattached(outcome.reason);
    return;
  }
  const SiteRef &site = outcome.decision.chosen;
  p->mark_attached(site);
  if (site.kind == SiteRef::Kind::kFrameRole) {
    RoleSlot &slot = s.find_frame(site.frame)->roles.at(site.role);
    if (slot.filler) {
      throw std::logic_error("slot " + site.to_string() + " already filled");
    }
    slot.filler = p->object_np;
  } else {
    s.find_np(site.np)->modifiers.push_back(p->id);
  }
}

AttachOutcome attach_pp(AnnotatedSentence &s, const std::string &pp_id,
                        const AttachmentRuleTable &rules,
                        const SemanticLexicon &lex) {
  const PrepPhrase *p = s.find_pp(pp_id);
  if (p == nullptr) throw std::logic_error("unknown pp " + pp_id);
  AttachOutcome outcome = decide_attachment(*p, s, rules, lex);
  apply_attachment(s, pp_id, outcome);
  return outcome;
}

AttachmentReport attachment_pass(AnnotatedSentence &s,
                                 const AttachmentRuleTable &rules,
                                 const SemanticLexicon &lex, int pass_number,
                                 Trace &trace) {
  AttachmentReport report;
  for (size_t i = 0; i < s.pps.size(); ++i) {
    PrepPhrase &p = s.pps[i];
    if (!p.open()) continue;
    TraceEvent event{pass_number, Module::kAttachment, p.id, Action::kSkip,
                     ""};
    SkipDecision skip = skip_pp(p, s);
    if (skip.skip) {
      p.mark_skipped(skip.reason);
      event.detail = skip.reason;
      ++report.skipped;
    } else {
      const std::string id = p.id;
      AttachOutcome outcome = attach_pp(s, id, rules, lex);
      if (outcome.attached) {
        event.action = Action::kAttach;
        event.detail = outcome.decision.chosen.to_string();
        ++report.attached;
      } else {
        event.action = Action::kUnattached;
        event.detail = outcome.reason;
        ++report.unattached;
      }
    }
    trace.push_back(std::move(event));
  }
  return report;
}

}  // namespace coresolve
