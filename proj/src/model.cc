#include "coresolve/model.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace coresolve {

bool compatible(const Agreement &a, const Agreement &b) {
  bool gender_ok = a.gender == Gender::kUnspec ||
                   b.gender == Gender::kUnspec || a.gender == b.gender;
  bool number_ok = a.number == Number::kUnspec ||
                   b.number == Number::kUnspec || a.number == b.number;
  return gender_ok && number_ok;
}

std::string_view gender_name(Gender g) {
  switch (g) {
    case Gender::kMasc: return "masc";
    case Gender::kFem: return "fem";
    case Gender::kNeut: return "neut";
    case Gender::kUnspec: return "unspec";
  }
  return "unspec";
}

std::string_view number_name(Number n) {
  switch (n) {
    case Number::kSing: return "sing";
    case Number::kPlur: return "plur";
    case Number::kUnspec: return "unspec";
  }
  return "unspec";
}

std::optional<Gender> parse_gender(std::string_view s) {
  if (s == "masc") return Gender::kMasc;
  if (s == "fem") return Gender::kFem;
  if (s == "neut") return Gender::kNeut;
  if (s == "unspec") return Gender::kUnspec;
  return std::nullopt;
}

std::optional<Number> parse_number(std::string_view s) {
  if (s == "sing") return Number::kSing;
  if (s == "plur") return Number::kPlur;
  if (s == "unspec") return Number::kUnspec;
  return std::nullopt;
}

std::string_view anaphor_kind_name(AnaphorKind k) {
  switch (k) {
    case AnaphorKind::kPersonal: return "personal";
    case AnaphorKind::kPossessive: return "possessive";
    case AnaphorKind::kDemonstrative: return "demonstrative-one-anaphor";
  }
  return "personal";
}

std::optional<AnaphorKind> parse_anaphor_kind(std::string_view s) {
  if (s == "personal") return AnaphorKind::kPersonal;
  if (s == "possessive") return AnaphorKind::kPossessive;
  if (s == "demonstrative-one-anaphor" || s == "demonstrative") {
    return AnaphorKind::kDemonstrative;
  }
  return std::nullopt;
}

std::string_view status_name(AnaphorStatus s) {
  switch (s) {
    case AnaphorStatus::kPending: return "pending";
    case AnaphorStatus::kSkipped: return "skipped";
    case AnaphorStatus::kResolved: return "resolved";
    case AnaphorStatus::kUnresolvable: return "unresolvable";
  }
  return "pending";
}

std::string_view status_name(PPStatus s) {
  switch (s) {
    case PPStatus::kPending: return "pending";
    case PPStatus::kSkipped: return "skipped";
    case PPStatus::kAttached: return "attached";
    case PPStatus::kUnattached: return "unattached";
  }
  return "pending";
}

// ---------------------------------------------------------------------------
// Status lifecycle.

void Anaphor::require_open(std::string_view action) const {
  if (!open()) {
    throw std::logic_error("anaphor " + id + ": cannot " +
                           std::string(action) + " a decided anaphor (" +
                           std::string(status_name(status_)) + ")");
  }
}

void Anaphor::reset() {
  status_ = AnaphorStatus::kPending;
  antecedent_.clear();
  antecedent_class_.clear();
  antecedent_head_.clear();
  reason_.clear();
}

void Anaphor::mark_skipped(std::string reason) {
  require_open("skip");
  status_ = AnaphorStatus::kSkipped;
  reason_ = std::move(reason);
}

void Anaphor::mark_resolved(std::string entity, std::string cls,
                            std::string head) {
  require_open("resolve");
  status_ = AnaphorStatus::kResolved;
  antecedent_ = std::move(entity);
  antecedent_class_ = std::move(cls);
  antecedent_head_ = std::move(head);
  reason_.clear();
}

void Anaphor::mark_unresolvable(std::string reason) {
  require_open("mark unresolvable");
  status_ = AnaphorStatus::kUnresolvable;
  reason_ = std::move(reason);
}

void PrepPhrase::require_open(std::string_view action) const {
  if (!open()) {
    throw std::logic_error("pp " + id + ": cannot " + std::string(action) +
                           " a decided PP (" +
                           std::string(status_name(status_)) + ")");
  }
}

void PrepPhrase::reset() {
  status_ = PPStatus::kPending;
  site_.reset();
  reason_.clear();
}

void PrepPhrase::mark_skipped(std::string reason) {
  require_open("skip");
  status_ = PPStatus::kSkipped;
  reason_ = std::move(reason);
}

void PrepPhrase::mark_attached(SiteRef site) {
  require_open("attach");
  if (std::find(candidate_sites.begin(), candidate_sites.end(), site) ==
      candidate_sites.end()) {
    throw std::logic_error("pp " + id + ": site " + site.to_string() +
                           " is not a candidate");
  }
  status_ = PPStatus::kAttached;
  site_ = std::move(site);
  reason_.clear();
}

void PrepPhrase::mark_unattached(std::string reason) {
  require_open("mark unattached");
  status_ = PPStatus::kUnattached;
  reason_ = std::move(reason);
}

SiteRef SiteRef::frame_role(std::string frame, std::string role) {
  SiteRef s;
  s.kind = Kind::kFrameRole;
  s.frame = std::move(frame);
  s.role = std::move(role);
  return s;
}

SiteRef SiteRef::np_modifier(std::string np) {
  SiteRef s;
  s.kind = Kind::kNpModifier;
  s.np = std::move(np);
  return s;
}

std::string SiteRef::to_string() const {
  if (kind == Kind::kFrameRole) return frame + "." + role;
  return "np:" + np;
}

// ---------------------------------------------------------------------------
// Lookups.

namespace {

template <typename Vec>
auto find_by_id(Vec &items, std::string_view id) -> decltype(&items[0]) {
  for (auto &item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

}  // namespace

const NounPhrase *AnnotatedSentence::find_np(std::string_view id) const {
  return find_by_id(nps, id);
}
NounPhrase *AnnotatedSentence::find_np(std::string_view id) {
  return find_by_id(nps, id);
}
const Frame *AnnotatedSentence::find_frame(std::string_view id) const {
  return find_by_id(frames, id);
}
Frame *AnnotatedSentence::find_frame(std::string_view id) {
  return find_by_id(frames, id);
}
const Anaphor *AnnotatedSentence::find_anaphor(std::string_view id) const {
  return find_by_id(anaphors, id);
}
const PrepPhrase *AnnotatedSentence::find_pp(std::string_view id) const {
  return find_by_id(pps, id);
}

const Anaphor *AnnotatedSentence::anaphor_for_np(
    std::string_view np_id) const {
  for (const auto &a : anaphors) {
    if (a.np_id == np_id) return &a;
  }
  return nullptr;
}

bool AnnotatedSentence::site_exists(const SiteRef &site) const {
  if (site.kind == SiteRef::Kind::kNpModifier) {
    return find_np(site.np) != nullptr;
  }
  const Frame *f = find_frame(site.frame);
  return f != nullptr && f->roles.count(site.role) > 0;
}

int AnnotatedSentence::open_decisions() const {
  int n = 0;
  for (const auto &a : anaphors) n += a.open() ? 1 : 0;
  for (const auto &p : pps) n += p.open() ? 1 : 0;
  return n;
}

const LexEntry *SemanticLexicon::find(std::string_view lemma) const {
  auto it = entries.find(std::string(lemma));
  return it == entries.end() ? nullptr : &it->second;
}

const FocusEntry *DiscourseState::find(std::string_view entity) const {
  for (const auto &e : focus_list) {
    if (e.entity == entity) return &e;
  }
  return nullptr;
}

void DiscourseState::prepend(const std::vector<FocusEntry> &entries) {
  std::vector<FocusEntry> merged;
  merged.reserve(entries.size() + focus_list.size());
  auto seen = [&merged](const std::string &id) {
    return std::any_of(merged.begin(), merged.end(),
                       [&id](const FocusEntry &e) { return e.entity == id; });
  };
  for (const auto &e : entries) {
    if (!seen(e.entity)) merged.push_back(e);
  }
  for (const auto &e : focus_list) {
    if (!seen(e.entity)) merged.push_back(e);
  }
  focus_list = std::move(merged);
}

// ---------------------------------------------------------------------------
// Validation.

bool ValidationReport::mentions(std::string_view message) const {
  return std::any_of(violations.begin(), violations.end(),
                     [message](const Violation &v) {
                       return v.message.find(message) != std::string::npos;
                     });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    if (!violations[i].id.empty()) out << violations[i].id << ": ";
    out << violations[i].message;
  }
  return out.str();
}

void validate_lexicon(const SemanticLexicon &lex) {
  for (const auto &[lemma, entry] : lex.entries) {
    if (!entry.semantic_class.empty() && !lex.has_class(entry.semantic_class)) {
      throw ReferenceError("lexicon entry '" + lemma +
                           "' uses undefined class " + entry.semantic_class);
    }
  }
  // possessor_classes is not checked: the defaults may name classes a
  // lexicon never uses.
}

void validate_rules(const AttachmentRuleTable &rules,
                    const SemanticLexicon &lex) {
  std::map<std::tuple<std::string, std::string, std::string, int>,
           std::string>
      seen;
  for (size_t i = 0; i < rules.rules.size(); ++i) {
    const auto &r = rules.rules[i];
    std::string where = "rule " + std::to_string(i);
    if (!lex.has_class(r.object_class)) {
      throw ReferenceError(where + ": undefined object_class " +
                           r.object_class);
    }
    if (r.score <= 0) {
      throw ValidationError(where + ": score must be positive");
    }
    if (r.governor.empty() || r.preposition.empty() || r.role.empty()) {
      throw ValidationError(where + ": empty governor, prep or role");
    }
    auto key = std::make_tuple(r.governor, r.preposition, r.object_class,
                               r.score);
    auto [it, inserted] = seen.emplace(key, r.role);
    if (!inserted && it->second != r.role) {
      throw ValidationError(where + ": conflicts with another rule for (" +
                            r.governor + ", " + r.preposition + ", " +
                            r.object_class + ") at equal score");
    }
  }
}

ValidationReport validate_sentence(const AnnotatedSentence &s,
                                   const SemanticLexicon &lex) {
  ValidationReport report;
  auto add = [&report](std::string id, std::string message) {
    report.violations.push_back({std::move(id), std::move(message)});
  };
  const int n = static_cast<int>(s.tokens.size());

  for (int i = 0; i < n; ++i) {
    if (s.tokens[i].index != i) {
      add("", "token indices not consecutive at position " +
                  std::to_string(i));
      break;
    }
  }

  std::set<std::string> ids;
  auto unique = [&](const std::string &id) {
    if (id.empty()) {
      add(id, "empty id");
    } else if (!ids.insert(id).second) {
      add(id, "duplicate id");
    }
  };

  for (const auto &np : s.nps) {
    unique(np.id);
    if (np.start < 0 || np.end > n || np.start >= np.end) {
      add(np.id, "span out of sentence bounds");
    }
    if (np.parent_np) {
      const NounPhrase *parent = s.find_np(*np.parent_np);
      if (parent == nullptr) {
        add(np.id, "unknown parent_np " + *np.parent_np);
      } else if (!parent->contains_span(np) || parent->id == np.id) {
        add(np.id, "parent_np span does not contain this span");
      }
    }
    if (lex.find(np.head_lemma) == nullptr) {
      add(np.id, "head lemma '" + np.head_lemma + "' missing from lexicon");
    }
    if (np.is_pronoun) {
      int refs = 0;
      for (const auto &a : s.anaphors) refs += a.np_id == np.id ? 1 : 0;
      if (refs != 1) {
        add(np.id, "pronoun NP referenced by " + std::to_string(refs) +
                       " anaphors");
      }
    } else {
      if (np.semantic_class.empty()) {
        add(np.id, "non-pronoun NP without semantic class");
      } else if (!lex.has_class(np.semantic_class)) {
        add(np.id, "undefined class " + np.semantic_class);
      }
    }
  }

  for (const auto &f : s.frames) {
    unique(f.id);
    for (const auto &[role, slot] : f.roles) {
      for (const auto &cls : slot.expected_classes) {
        if (!lex.has_class(cls)) {
          add(f.id, "role " + role + " expects undefined class " + cls);
        }
      }
    }
  }

  int last = -1;
  for (const auto &a : s.anaphors) {
    unique(a.id);
    const NounPhrase *np = s.find_np(a.np_id);
    if (np == nullptr) {
      add(a.id, "unknown np " + a.np_id);
    } else {
      if (!np->is_pronoun) add(a.id, "anaphor references non-pronoun NP");
      if (!np->contains(a.position)) {
        add(a.id, "position outside its NP span");
      }
    }
    if (a.position < 0 || a.position >= n) {
      add(a.id, "position out of sentence bounds");
    }
    if (a.position <= last) add(a.id, "anaphor positions not increasing");
    last = a.position;
  }

  last = -1;
  for (const auto &p : s.pps) {
    unique(p.id);
    if (p.position < 0 || p.position >= n) {
      add(p.id, "position out of sentence bounds");
    }
    if (p.position <= last) add(p.id, "PP positions not increasing");
    last = p.position;
    const NounPhrase *obj = s.find_np(p.object_np);
    if (obj == nullptr) {
      add(p.id, "unknown object np " + p.object_np);
    } else if (obj->start <= p.position) {
      add(p.id, "object span does not begin after the preposition");
    }
    if (p.candidate_sites.empty()) add(p.id, "empty candidate_sites");
    std::set<SiteRef> sites;
    for (const auto &site : p.candidate_sites) {
      if (!s.site_exists(site)) {
        add(p.id, "dangling site " + site.to_string());
      }
      if (!sites.insert(site).second) {
        add(p.id, "duplicate site " + site.to_string());
      }
    }
  }
  return report;
}

ValidationReport validate_document(const Document &doc,
                                   const SemanticLexicon &lex) {
  ValidationReport report;
  std::set<std::string> entities;
  int last_index = -1;
  for (const auto &s : doc.sentences) {
    std::string where = "sentence " + std::to_string(s.index);
    if (s.index <= last_index) {
      report.violations.push_back({where, "sentence indices not increasing"});
    }
    last_index = s.index;
    for (const auto &v : validate_sentence(s, lex).violations) {
      report.violations.push_back(
          {where + (v.id.empty() ? "" : "/" + v.id), v.message});
    }
    for (const auto &np : s.nps) {
      if (!entities.insert(np.id).second) {
        report.violations.push_back(
            {where + "/" + np.id, "entity id reused across sentences"});
      }
    }
  }
  return report;
}

AnnotatedSentence build_initial_state(const AnnotatedSentence &s,
                                      const SemanticLexicon &lex) {
  ValidationReport report = validate_sentence(s, lex);
  if (!report.ok()) {
    throw ValidationError("sentence " + std::to_string(s.index) + ": " +
                          report.to_string());
  }
  AnnotatedSentence state = s;
  for (auto &a : state.anaphors) a.reset();
  for (auto &np : state.nps) np.modifiers.clear();
  for (auto &p : state.pps) {
    p.reset();
    for (const auto &site : p.candidate_sites) {
      if (site.kind != SiteRef::Kind::kFrameRole) continue;
      state.find_frame(site.frame)->roles.at(site.role).filler.reset();
    }
  }
  return state;
}

}  // namespace coresolve
