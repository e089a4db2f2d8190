#include "coresolve/anaphora.h"

#include <algorithm>
#include <tuple>

namespace coresolve {

SkipDecision skip_anaphor(const Anaphor &a, const AnnotatedSentence &s) {
  for (const auto &p : s.pps) {
    if (p.position >= a.position) break;
    if (!p.open() || !p.ambiguous()) continue;
    const NounPhrase *obj = s.find_np(p.object_np);
    if (obj != nullptr && obj->contains(a.position)) continue;
    return {true, p.id, "blocked-by:" + p.id};
  }
  return SkipDecision::proceed();
}

std::string_view provenance_name(Provenance p) {
  return p == Provenance::kIntraSentential ? "intra-sentential" : "focus-list";
}

bool ranks_before(const Candidate &a, const Candidate &b) {
  if (a.rank != b.rank) return a.rank > b.rank;
  if (a.provenance != b.provenance) {
    return a.provenance == Provenance::kIntraSentential;
  }
  if (a.provenance == Provenance::kIntraSentential) {
    return std::make_tuple(a.mention, a.start, a.entity) >
           std::make_tuple(b.mention, b.start, b.entity);
  }
  return std::tie(a.focus_index, a.entity) < std::tie(b.focus_index, b.entity);
}

namespace {

struct Features {
  const std::string &semantic_class;
  const Agreement &agreement;
  bool proper;
};

bool passes_filters(const Anaphor &a, const Agreement &pronoun,
                    const Features &f, const SemanticLexicon &lex) {
  switch (a.kind) {
    case AnaphorKind::kDemonstrative:
      return !f.proper && compatible({Gender::kUnspec, pronoun.number},
                                     {Gender::kUnspec, f.agreement.number});
    case AnaphorKind::kPossessive:
      return compatible(pronoun, f.agreement) &&
             lex.possessor_classes.count(f.semantic_class) > 0;
    case AnaphorKind::kPersonal:
      return compatible(pronoun, f.agreement);
  }
  return false;
}

Candidate intra_candidate(const NounPhrase &np, bool demonstrative) {
  Candidate c;
  c.entity = np.id;
  c.rank = (!demonstrative && np.subject) ? 2 : 1;
  c.provenance = Provenance::kIntraSentential;
  c.mention = np.head_position();
  c.start = np.start;
  c.semantic_class = np.semantic_class;
  c.head_lemma = np.head_lemma;
  return c;
}

Candidate focus_candidate(const FocusEntry &e, int index, bool demonstrative) {
  Candidate c;
  c.entity = e.entity;
  c.rank = (!demonstrative && index == 0) ? 3 : 0;
  c.provenance = Provenance::kFocusList;
  c.focus_index = index;
  c.semantic_class = e.semantic_class;
  c.head_lemma = e.head_lemma;
  return c;
}

// Keeps one entry per entity, the best ranked.
void add_candidate(std::vector<Candidate> &out, Candidate c) {
  for (auto &existing : out) {
    if (existing.entity == c.entity) {
      if (ranks_before(c, existing)) existing = std::move(c);
      return;
    }
  }
  out.push_back(std::move(c));
}

}  // namespace

CandidateSet candidate_antecedents(const Anaphor &a,
                                   const AnnotatedSentence &s,
                                   const DiscourseState &d,
                                   const SemanticLexicon &lex) {
  CandidateSet set;
  set.anaphor = a.id;
  const NounPhrase *pronoun = s.find_np(a.np_id);
  if (pronoun == nullptr) return set;
  const bool demonstrative = a.kind == AnaphorKind::kDemonstrative;

  auto focus_index = [&d](const std::string &entity) {
    for (size_t i = 0; i < d.focus_list.size(); ++i) {
      if (d.focus_list[i].entity == entity) return static_cast<int>(i);
    }
    return -1;
  };

  for (const auto &np : s.nps) {
    if (np.end > a.position) continue;
    if (!np.is_pronoun) {
      if (passes_filters(a, pronoun->agreement,
                         {np.semantic_class, np.agreement, np.proper}, lex)) {
        add_candidate(set.candidates, intra_candidate(np, demonstrative));
      }
      continue;
    }
    // A resolved pronoun stands for its antecedent, which keeps its own
    // mention features.
    const Anaphor *other = s.anaphor_for_np(np.id);
    if (other == nullptr || other->status() != AnaphorStatus::kResolved) {
      continue;
    }
    if (const NounPhrase *ante = s.find_np(other->antecedent())) {
      if (passes_filters(a, pronoun->agreement,
                         {ante->semantic_class, ante->agreement, ante->proper},
                         lex)) {
        add_candidate(set.candidates, intra_candidate(*ante, demonstrative));
      }
    } else if (int i = focus_index(other->antecedent()); i >= 0) {
      const FocusEntry &e = d.focus_list[i];
      if (passes_filters(a, pronoun->agreement,
                         {e.semantic_class, e.agreement, e.proper}, lex)) {
        add_candidate(set.candidates, focus_candidate(e, i, demonstrative));
      }
    }
  }

  for (size_t i = 0; i < d.focus_list.size(); ++i) {
    const FocusEntry &e = d.focus_list[i];
    if (passes_filters(a, pronoun->agreement,
                       {e.semantic_class, e.agreement, e.proper}, lex)) {
      add_candidate(set.candidates,
                    focus_candidate(e, static_cast<int>(i), demonstrative));
    }
  }

  std::sort(set.candidates.begin(), set.candidates.end(), ranks_before);

  if (set.candidates.empty()) {
    for (const auto &np : s.nps) {
      if (np.is_pronoun || np.start <= a.position) continue;
      if (passes_filters(a, pronoun->agreement,
                         {np.semantic_class, np.agreement, np.proper}, lex)) {
        set.following_plausible = true;
        break;
      }
    }
  }
  return set;
}

Resolution resolve_anaphor(const Anaphor & /*a*/, const CandidateSet &c) {
  Resolution r;
  if (c.candidates.empty()) {
    r.reason = c.following_plausible ? "cataphor-out-of-scope" : "no-candidate";
    return r;
  }
  r.resolved = true;
  r.antecedent = c.candidates.front();
  return r;
}

AnaphoraReport anaphora_pass(AnnotatedSentence &s, const DiscourseState &d,
                             const SemanticLexicon &lex, int pass_number,
                             Trace &trace) {
  AnaphoraReport report;
  for (auto &a : s.anaphors) {
    if (!a.open()) continue;
    TraceEvent event{pass_number, Module::kAnaphora, a.id, Action::kSkip, ""};
    SkipDecision skip = skip_anaphor(a, s);
    if (skip.skip) {
      a.mark_skipped(skip.reason);
      event.detail = skip.reason;
      ++report.skipped;
    } else {
      Resolution r = resolve_anaphor(a, candidate_antecedents(a, s, d, lex));
      if (r.resolved) {
        a.mark_resolved(r.antecedent.entity, r.antecedent.semantic_class,
                        r.antecedent.head_lemma);
        event.action = Action::kResolve;
        event.detail = r.antecedent.entity;
        ++report.resolved;
      } else {
        a.mark_unresolvable(r.reason);
        event.action = Action::kUnresolvable;
        event.detail = r.reason;
        ++report.unresolvable;
      }
    }
    trace.push_back(std::move(event));
  }
  return report;
}

}  // namespace coresolve
