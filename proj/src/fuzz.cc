#include "coresolve/fuzz.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "coresolve/coordinator.h"
#include "coresolve/oracle.h"

namespace coresolve {

namespace {

struct NounSpec {
  const char *lemma;
  const char *cls;
  Gender gender;
  Number number;
  bool proper;
};

constexpr NounSpec kNouns[] = {
    {"company", "ORGANIZATION", Gender::kNeut, Number::kSing, false},
    {"bank", "ORGANIZATION", Gender::kNeut, Number::kSing, false},
    {"firms", "ORGANIZATION", Gender::kNeut, Number::kPlur, false},
    {"director", "HUMAN", Gender::kUnspec, Number::kSing, false},
    {"investors", "HUMAN", Gender::kUnspec, Number::kPlur, false},
    {"price", "ATTRIBUTE", Gender::kNeut, Number::kSing, false},
    {"shares", "SECURITY", Gender::kNeut, Number::kPlur, false},
    {"sale", "TRANSACTION", Gender::kNeut, Number::kSing, false},
    {"bid", "TRANSACTION", Gender::kNeut, Number::kSing, false},
    {"rumour", "EVENT", Gender::kNeut, Number::kSing, false},
    {"meeting", "EVENT", Gender::kNeut, Number::kSing, false},
    {"year", "TIME-POINT", Gender::kNeut, Number::kSing, false},
    {"october", "TIME-POINT", Gender::kNeut, Number::kSing, true},
    {"hanson", "ORGANIZATION", Gender::kNeut, Number::kSing, true},
    {"lazard", "ORGANIZATION", Gender::kNeut, Number::kSing, true},
};

struct PronounSpec {
  const char *lemma;
  AnaphorKind kind;
  Number number;
};

constexpr PronounSpec kSingular[] = {
    {"it", AnaphorKind::kPersonal, Number::kSing},
    {"its", AnaphorKind::kPossessive, Number::kSing},
    {"that", AnaphorKind::kDemonstrative, Number::kSing},
};

constexpr PronounSpec kPlural[] = {
    {"they", AnaphorKind::kPersonal, Number::kPlur},
    {"their", AnaphorKind::kPossessive, Number::kPlur},
    {"those", AnaphorKind::kDemonstrative, Number::kPlur},
};

constexpr const char *kVerbs[] = {"suspend", "buy", "sell", "propose",
                                  "report"};
constexpr const char *kPreps[] = {"in", "on",  "at",   "since",
                                  "of", "for", "with", "by"};
constexpr const char *kRoles[] = {"TIME", "CAUSE", "THEME", "LOCATION",
                                  "AGENT"};
constexpr const char *kClasses[] = {"ORGANIZATION", "HUMAN",      "ATTRIBUTE",
                                    "SECURITY",     "TRANSACTION", "EVENT",
                                    "TIME-POINT"};

template <typename T, size_t N>
const T &pick(std::mt19937_64 &rng, const T (&items)[N]) {
  return items[std::uniform_int_distribution<size_t>(0, N - 1)(rng)];
}

bool chance(std::mt19937_64 &rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

int uniform(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

class SentenceBuilder {
 public:
  SentenceBuilder(std::mt19937_64 &rng, const FuzzWorld &world, int index,
                  const FuzzLimits &limits)
      : rng_(rng), world_(world), limits_(limits) {
    s_.index = index;
    prefix_ = "s" + std::to_string(index);
  }

  AnnotatedSentence build() {
    const NounSpec &subject = kNouns[uniform(rng_, 0, 1)];
    add_token("the");
    add_noun(subject, 0).subject = true;

    int elements = uniform(rng_, 2, limits_.max_elements);
    for (int i = 0; i < elements; ++i) {
      int roll = uniform(rng_, 0, 99);
      if (roll < 15) {
        add_verb();
      } else if (roll < 35) {
        add_noun_phrase();
      } else if (roll < 55 && can_add_anaphor()) {
        add_pronoun_phrase();
      } else if (can_add_pp()) {
        add_pp();
      } else {
        add_noun_phrase();
      }
    }
    stretch_objects();
    assign_sites();
    return std::move(s_);
  }

 private:
  int add_token(const std::string &lemma) {
    int i = static_cast<int>(s_.tokens.size());
    s_.tokens.push_back({i, lemma, lemma});
    return i;
  }

  std::string next_id(char kind) {
    return prefix_ + kind + std::to_string(counter_++);
  }

  NounPhrase &add_np(int start, const NounSpec &spec) {
    NounPhrase np;
    np.id = next_id('e');
    np.start = start;
    np.end = static_cast<int>(s_.tokens.size());
    np.head_lemma = spec.lemma;
    np.semantic_class = spec.cls;
    np.agreement = {spec.gender, spec.number};
    np.proper = spec.proper;
    if (spec.number == Number::kPlur && !spec.proper &&
        world_.lex.possessor_classes.count(spec.cls) > 0) {
      plural_seen_ = true;
    }
    s_.nps.push_back(std::move(np));
    return s_.nps.back();
  }

  NounPhrase &add_noun(const NounSpec &spec, int start) {
    add_token(spec.lemma);
    return add_np(start, spec);
  }

  void add_noun_phrase() {
    const NounSpec &spec = pick(rng_, kNouns);
    int start = static_cast<int>(s_.tokens.size());
    if (!spec.proper && chance(rng_, 0.6)) add_token("the");
    add_noun(spec, start);
  }

  void add_verb() {
    int anchor = add_token(pick(rng_, kVerbs));
    Frame f;
    f.id = next_id('f');
    f.predicate_lemma = s_.tokens[anchor].lemma;
    int roles = uniform(rng_, 1, 3);
    for (int i = 0; i < roles; ++i) {
      RoleSlot slot;
      int expected = uniform(rng_, 0, 2);
      for (int k = 0; k < expected; ++k) {
        slot.expected_classes.insert(pick(rng_, kClasses));
      }
      int preps = uniform(rng_, 0, 2);
      for (int k = 0; k < preps; ++k) {
        slot.admitted_prepositions.insert(pick(rng_, kPreps));
      }
      f.roles.emplace(pick(rng_, kRoles), std::move(slot));
    }
    frame_anchor_[f.id] = anchor;
    s_.frames.push_back(std::move(f));
  }

  bool can_add_anaphor() const {
    return static_cast<int>(s_.anaphors.size()) < limits_.max_anaphors;
  }
  bool can_add_pp() const {
    return static_cast<int>(s_.pps.size()) < limits_.max_pps;
  }

  const PronounSpec &pick_pronoun(bool allow_possessive) {
    while (true) {
      const PronounSpec &p = plural_seen_ && chance(rng_, 0.4)
                                 ? pick(rng_, kPlural)
                                 : pick(rng_, kSingular);
      if (allow_possessive || p.kind != AnaphorKind::kPossessive) return p;
    }
  }

  // Adds a pronoun NP and its anaphor at the current token.
  NounPhrase &add_pronoun(const PronounSpec &spec) {
    int position = add_token(spec.lemma);
    NounPhrase np;
    np.id = next_id('e');
    np.start = position;
    np.end = position + 1;
    np.head_lemma = spec.lemma;
    const LexEntry *entry = world_.lex.find(spec.lemma);
    np.agreement = entry->agreement;
    np.is_pronoun = true;
    Anaphor a;
    a.id = next_id('a');
    a.np_id = np.id;
    a.kind = spec.kind;
    a.position = position;
    s_.anaphors.push_back(std::move(a));
    s_.nps.push_back(std::move(np));
    return s_.nps.back();
  }

  // "its price" as one NP with the possessive embedded, or a bare pronoun.
  // Returns the id of the outermost NP.
  std::string add_pronoun_phrase() {
    const PronounSpec &spec = pick_pronoun(true);
    if (spec.kind != AnaphorKind::kPossessive) return add_pronoun(spec).id;
    int start = static_cast<int>(s_.tokens.size());
    size_t pronoun_np = s_.nps.size();
    add_pronoun(spec);
    const NounSpec *noun = &pick(rng_, kNouns);
    while (noun->proper) noun = &pick(rng_, kNouns);
    std::string outer = add_noun(*noun, start).id;
    s_.nps[pronoun_np].parent_np = outer;
    return outer;
  }

  void add_pp() {
    PrepPhrase p;
    p.id = next_id('p');
    p.preposition = pick(rng_, kPreps);
    p.position = add_token(p.preposition);
    if (chance(rng_, 0.15)) {
      int gap = uniform(rng_, 1, 2);
      for (int i = 0; i < gap; ++i) {
        if (can_add_anaphor() && chance(rng_, 0.5)) {
          add_pronoun(pick_pronoun(false));
        } else {
          add_token("recently");
        }
      }
    }
    int roll = uniform(rng_, 0, 99);
    if (roll < 45 && can_add_anaphor()) {
      p.object_np = add_pronoun_phrase();
    } else {
      int before = static_cast<int>(s_.nps.size());
      add_noun_phrase();
      p.object_np = s_.nps[before].id;
      if (chance(rng_, 0.2)) stretch_.push_back(p.object_np);
    }
    s_.pps.push_back(std::move(p));
  }

  // Some plain objects extend over later phrases, nesting or crossing
  // other PPs.
  void stretch_objects() {
    const int n = static_cast<int>(s_.tokens.size());
    for (const auto &id : stretch_) {
      NounPhrase *np = s_.find_np(id);
      if (np->end >= n) continue;
      np->end = uniform(rng_, np->end + 1, n);
    }
  }

  int anchor(const SiteRef &site) const {
    if (site.kind == SiteRef::Kind::kFrameRole) {
      return frame_anchor_.at(site.frame);
    }
    return s_.find_np(site.np)->head_position();
  }

  void assign_sites() {
    for (auto &p : s_.pps) {
      std::vector<SiteRef> pool;
      for (const auto &f : s_.frames) {
        if (frame_anchor_.at(f.id) >= p.position) continue;
        for (const auto &[role, slot] : f.roles) {
          pool.push_back(SiteRef::frame_role(f.id, role));
        }
      }
      for (const auto &np : s_.nps) {
        if (np.end <= p.position) pool.push_back(SiteRef::np_modifier(np.id));
      }
      std::shuffle(pool.begin(), pool.end(), rng_);
      int roll = uniform(rng_, 0, 9);
      size_t want = roll < 3 ? 1 : (roll < 7 ? 2 : 3);
      pool.resize(std::min(want, pool.size()));
      std::sort(pool.begin(), pool.end(),
                [this](const SiteRef &a, const SiteRef &b) {
                  return std::make_tuple(anchor(a), a.to_string()) <
                         std::make_tuple(anchor(b), b.to_string());
                });
      p.candidate_sites = std::move(pool);
    }
  }

  std::mt19937_64 &rng_;
  const FuzzWorld &world_;
  const FuzzLimits &limits_;
  AnnotatedSentence s_;
  std::string prefix_;
  int counter_ = 0;
  bool plural_seen_ = false;
  std::map<std::string, int> frame_anchor_;
  std::vector<std::string> stretch_;
};

}  // namespace

FuzzWorld make_fuzz_world(uint64_t seed) {
  FuzzWorld world;
  SemanticLexicon &lex = world.lex;
  for (const char *cls : kClasses) lex.classes.insert(cls);
  for (const auto &n : kNouns) {
    lex.entries[n.lemma] = {n.cls, {n.gender, n.number}, n.proper};
  }
  for (const auto &p : kSingular) {
    lex.entries[p.lemma] = {"", {Gender::kNeut, p.number}, false};
  }
  for (const auto &p : kPlural) {
    lex.entries[p.lemma] = {"", {Gender::kUnspec, p.number}, false};
  }
  lex.entries["that"].agreement.gender = Gender::kUnspec;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::map<std::tuple<std::string, std::string, std::string, int>,
           std::string>
      keys;
  for (int i = 0; i < 400; ++i) {
    AttachmentRule r;
    int kind = uniform(rng, 0, 2);
    if (kind == 0) {
      r.governor = pick(rng, kVerbs);
      r.role = pick(rng, kRoles);
    } else {
      r.governor = kind == 1 ? std::string(pick(rng, kNouns).lemma)
                             : std::string(pick(rng, kClasses));
      r.role = "MOD";
    }
    r.preposition = pick(rng, kPreps);
    r.object_class = pick(rng, kClasses);
    r.score = uniform(rng, 1, 5);
    auto key = std::make_tuple(r.governor, r.preposition, r.object_class,
                               r.score);
    auto [it, inserted] = keys.emplace(key, r.role);
    if (!inserted && it->second != r.role) continue;
    world.rules.rules.push_back(std::move(r));
  }
  validate_rules(world.rules, lex);
  return world;
}

Document random_document(std::mt19937_64 &rng, const FuzzWorld &world,
                         const std::string &id, const FuzzLimits &limits) {
  Document doc;
  doc.id = id;
  int sentences = uniform(rng, 1, std::max(1, limits.max_sentences));
  for (int i = 0; i < sentences; ++i) {
    doc.sentences.push_back(SentenceBuilder(rng, world, i, limits).build());
  }
  return doc;
}

std::string FuzzSummary::to_string() const {
  std::ostringstream out;
  out << "documents=" << documents << " sentences=" << sentences
      << " cyclic=" << cyclic << " oracle_diffs=" << oracle_diffs
      << " schedule_diffs=" << schedule_diffs
      << " bound_violations=" << bound_violations
      << " redundancy_violations=" << redundancy_violations
      << " cycle_outcome_diffs=" << cycle_outcome_diffs
      << " invariant_violations=" << invariant_violations
      << " max_module_calls=" << max_module_calls;
  return out.str();
}

FuzzSummary run_fuzz(int sentences, uint64_t seed, const FuzzLimits &limits) {
  FuzzSummary summary;
  FuzzWorld world = make_fuzz_world(seed);
  std::mt19937_64 rng(seed);
  auto fail = [&summary](std::string message) {
    if (summary.failures.size() < 10) {
      summary.failures.push_back(std::move(message));
    }
  };

  while (summary.sentences < sentences) {
    Document doc = random_document(
        rng, world, "fuzz" + std::to_string(summary.documents), limits);
    doc.sentences.resize(std::min<size_t>(
        doc.sentences.size(), static_cast<size_t>(sentences - summary.sentences)));
    ++summary.documents;

    DocumentResult engine = resolve_document(doc, world.rules, world.lex);
    OracleDocumentResult oracle =
        oracle_resolve_document(doc, world.rules, world.lex);

    DiscourseState before;
    for (size_t i = 0; i < doc.sentences.size(); ++i) {
      ++summary.sentences;
      const SentenceResult &e = engine.sentences[i];
      const OracleResult &o = oracle.sentences[i];
      std::string where = doc.id + "/" + std::to_string(i) + ": ";
      summary.max_module_calls =
          std::max(summary.max_module_calls, e.module_calls);
      if (!o.acyclic) ++summary.cyclic;

      EquivalenceReport eq = compare(e, o);
      if (!eq.equal()) {
        ++summary.oracle_diffs;
        fail(where + eq.diffs.front());
      }
      if (e.module_calls != o.expected_module_calls) {
        ++summary.schedule_diffs;
        fail(where + "module_calls " + std::to_string(e.module_calls) +
             " vs graph " + std::to_string(o.expected_module_calls));
      }
      int items = static_cast<int>(e.state.anaphors.size() +
                                   e.state.pps.size());
      if (e.module_calls > 2 * (items + 1)) ++summary.bound_violations;

      std::map<std::string, int> terminal;
      for (const auto &ev : e.trace) {
        if (is_terminal(ev.action)) ++terminal[ev.target];
      }
      for (const auto &[target, count] : terminal) {
        if (count > 1) {
          ++summary.redundancy_violations;
          fail(where + target + " decided twice");
        }
      }
      bool stuck = e.outcome == Outcome::kDeadlocked;
      if (stuck == o.acyclic || e.deadlocked != o.deadlocked) {
        ++summary.cycle_outcome_diffs;
        fail(where + "deadlock outcome differs from graph");
      }
      auto problems = check_invariants(e, before);
      if (!problems.empty()) {
        ++summary.invariant_violations;
        fail(where + problems.front());
      }
      before = update_discourse(before, e.state, subject_first_salience);
    }
  }
  return summary;
}

}  // namespace coresolve
