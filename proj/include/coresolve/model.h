#ifndef CORESOLVE_MODEL_H_
#define CORESOLVE_MODEL_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coresolve {

// Raised for malformed input files (bad JSON, missing fields).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a file references an id or class tag that is not defined.
class ReferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a sentence or document fails validation.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the lexicon lacks an entry that resolution needs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Gender { kMasc, kFem, kNeut, kUnspec };
enum class Number { kSing, kPlur, kUnspec };

struct Agreement {
  Gender gender = Gender::kUnspec;
  Number number = Number::kUnspec;

  bool operator==(const Agreement &) const = default;
};

// Unspecified features are compatible with anything.
bool compatible(const Agreement &a, const Agreement &b);

std::string_view gender_name(Gender g);
std::string_view number_name(Number n);
std::optional<Gender> parse_gender(std::string_view s);
std::optional<Number> parse_number(std::string_view s);

struct Token {
  int index = 0;
  std::string surface;
  std::string lemma;

  bool operator==(const Token &) const = default;
};

struct NounPhrase {
  std::string id;                        // unique per document
  int start = 0;                         // token span [start, end)
  int end = 0;
  std::string head_lemma;
  std::string semantic_class;            // empty for pronouns
  Agreement agreement;
  bool is_pronoun = false;
  bool proper = false;                   // proper-noun head
  bool subject = false;                  // grammatical subject of the sentence
  std::optional<std::string> parent_np;  // enclosing NP for embedded NPs

  // PP ids attached to this NP as modifiers. Mutated by attachment.
  std::vector<std::string> modifiers;

  bool contains(int token) const { return token >= start && token < end; }
  bool contains_span(const NounPhrase &other) const {
    return other.start >= start && other.end <= end;
  }
  // Token used as the mention position when ordering by recency.
  int head_position() const { return end - 1; }

  bool operator==(const NounPhrase &) const = default;
};

enum class AnaphorKind { kPersonal, kPossessive, kDemonstrative };

std::string_view anaphor_kind_name(AnaphorKind k);
std::optional<AnaphorKind> parse_anaphor_kind(std::string_view s);

enum class AnaphorStatus { kPending, kSkipped, kResolved, kUnresolvable };

std::string_view status_name(AnaphorStatus s);

// A pronoun awaiting resolution. Status only moves pending -> skipped ->
// pending/skipped ... -> resolved | unresolvable; terminal states are final.
class Anaphor {
 public:
  std::string id;
  std::string np_id;
  AnaphorKind kind = AnaphorKind::kPersonal;
  int position = 0;

  AnaphorStatus status() const { return status_; }
  bool open() const {
    return status_ == AnaphorStatus::kPending ||
           status_ == AnaphorStatus::kSkipped;
  }
  // Antecedent entity id, set once resolved.
  const std::string &antecedent() const { return antecedent_; }
  // Semantic class and head lemma copied from the antecedent.
  const std::string &antecedent_class() const { return antecedent_class_; }
  const std::string &antecedent_head() const { return antecedent_head_; }
  // Skip or failure reason.
  const std::string &reason() const { return reason_; }

  void reset();
  void mark_skipped(std::string reason);
  void mark_resolved(std::string entity, std::string cls, std::string head);
  void mark_unresolvable(std::string reason);

  bool operator==(const Anaphor &) const = default;

 private:
  void require_open(std::string_view action) const;

  AnaphorStatus status_ = AnaphorStatus::kPending;
  std::string antecedent_;
  std::string antecedent_class_;
  std::string antecedent_head_;
  std::string reason_;
};

// Where a PP may attach: a role of a frame, or an NP it modifies.
struct SiteRef {
  enum class Kind { kFrameRole, kNpModifier };

  Kind kind = Kind::kFrameRole;
  std::string frame;  // kFrameRole
  std::string role;   // kFrameRole
  std::string np;     // kNpModifier

  static SiteRef frame_role(std::string frame, std::string role);
  static SiteRef np_modifier(std::string np);

  // "f_surge.THEME" or "np:e3".
  std::string to_string() const;

  bool operator==(const SiteRef &) const = default;
  auto operator<=>(const SiteRef &) const = default;
};

enum class PPStatus { kPending, kSkipped, kAttached, kUnattached };

std::string_view status_name(PPStatus s);

class PrepPhrase {
 public:
  std::string id;
  std::string preposition;
  std::string object_np;
  int position = 0;
  std::vector<SiteRef> candidate_sites;  // left to right

  bool ambiguous() const { return candidate_sites.size() >= 2; }

  PPStatus status() const { return status_; }
  bool open() const {
    return status_ == PPStatus::kPending || status_ == PPStatus::kSkipped;
  }
  const std::optional<SiteRef> &site() const { return site_; }
  const std::string &reason() const { return reason_; }

  void reset();
  void mark_skipped(std::string reason);
  void mark_attached(SiteRef site);
  void mark_unattached(std::string reason);

  bool operator==(const PrepPhrase &) const = default;

 private:
  void require_open(std::string_view action) const;

  PPStatus status_ = PPStatus::kPending;
  std::optional<SiteRef> site_;
  std::string reason_;
};

struct RoleSlot {
  std::optional<std::string> filler;       // entity id once filled
  std::set<std::string> expected_classes;  // empty admits any class
  std::set<std::string> admitted_prepositions;  // empty admits any

  bool operator==(const RoleSlot &) const = default;
};

struct Frame {
  std::string id;
  std::string predicate_lemma;
  std::map<std::string, RoleSlot> roles;

  bool operator==(const Frame &) const = default;
};

struct AnnotatedSentence {
  int index = 0;
  std::vector<Token> tokens;
  std::vector<NounPhrase> nps;
  std::vector<Anaphor> anaphors;
  std::vector<PrepPhrase> pps;
  std::vector<Frame> frames;

  const NounPhrase *find_np(std::string_view id) const;
  NounPhrase *find_np(std::string_view id);
  const Frame *find_frame(std::string_view id) const;
  Frame *find_frame(std::string_view id);
  const Anaphor *find_anaphor(std::string_view id) const;
  const PrepPhrase *find_pp(std::string_view id) const;
  // Anaphor attached to a pronoun NP, if any.
  const Anaphor *anaphor_for_np(std::string_view np_id) const;

  bool site_exists(const SiteRef &site) const;

  // Number of anaphors and PPs still pending or skipped.
  int open_decisions() const;

  bool operator==(const AnnotatedSentence &) const = default;
};

struct Document {
  std::string id;
  std::vector<AnnotatedSentence> sentences;

  bool operator==(const Document &) const = default;
};

struct LexEntry {
  std::string semantic_class;  // empty for pronouns
  Agreement agreement;
  bool proper = false;

  bool operator==(const LexEntry &) const = default;
};

// Lemma to class/agreement table, plus the open set of class tags.
struct SemanticLexicon {
  std::set<std::string> classes;
  std::map<std::string, LexEntry> entries;
  // Classes allowed as antecedents of possessive pronouns.
  std::set<std::string> possessor_classes = {"ORGANIZATION", "HUMAN",
                                             "EVENT"};

  const LexEntry *find(std::string_view lemma) const;
  bool has_class(std::string_view cls) const {
    return classes.count(std::string(cls)) > 0;
  }

  bool operator==(const SemanticLexicon &) const = default;
};

struct AttachmentRule {
  std::string governor;      // predicate lemma, NP head lemma or class tag
  std::string preposition;
  std::string object_class;
  std::string role;
  int score = 1;

  bool operator==(const AttachmentRule &) const = default;
};

struct AttachmentRuleTable {
  std::vector<AttachmentRule> rules;

  bool operator==(const AttachmentRuleTable &) const = default;
};

// Checks rule scores and the (governor, preposition, object_class) conflict
// invariant, and that every object_class is a lexicon class. Throws
// ReferenceError or ValidationError.
void validate_rules(const AttachmentRuleTable &rules,
                    const SemanticLexicon &lex);

// Checks the lexicon's own class references. Throws ReferenceError.
void validate_lexicon(const SemanticLexicon &lex);

struct Violation {
  std::string id;       // offending item, or empty for sentence-level
  std::string message;

  bool operator==(const Violation &) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool mentions(std::string_view message) const;
  std::string to_string() const;
};

ValidationReport validate_sentence(const AnnotatedSentence &s,
                                   const SemanticLexicon &lex);

// Document-level checks: per-sentence validation, strictly increasing
// indices and entity ids unique across sentences.
ValidationReport validate_document(const Document &doc,
                                   const SemanticLexicon &lex);

// Returns a copy with every decision pending, every role slot named by a
// candidate site empty and no NP modifiers. Throws ValidationError if the
// sentence does not validate.
AnnotatedSentence build_initial_state(const AnnotatedSentence &s,
                                      const SemanticLexicon &lex);

// One entity in the discourse focus list, with the features needed to
// test it as an antecedent after its sentence is gone.
struct FocusEntry {
  std::string entity;
  int sentence_index = 0;
  std::string head_lemma;
  std::string semantic_class;
  Agreement agreement;
  bool proper = false;

  bool operator==(const FocusEntry &) const = default;
};

struct DiscourseState {
  std::vector<FocusEntry> focus_list;  // most salient first

  const FocusEntry *find(std::string_view entity) const;
  // Puts the entries in front, in the given order, dropping older copies.
  void prepend(const std::vector<FocusEntry> &entries);

  bool operator==(const DiscourseState &) const = default;
};

}  // namespace coresolve

#endif  // CORESOLVE_MODEL_H_
