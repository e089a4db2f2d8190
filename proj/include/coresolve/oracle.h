#ifndef CORESOLVE_ORACLE_H_
#define CORESOLVE_ORACLE_H_

#include <map>
#include <string>
#include <vector>

#include "coresolve/coordinator.h"
#include "coresolve/model.h"
#include "coresolve/trace.h"

namespace coresolve {

// Who waits for whom in a sentence's initial state. Edges are derived from
// token positions, PP ambiguity and object spans alone:
//   anaphor a -> PP p   p precedes a, p has >= 2 sites, a not in p's object
//   PP p -> anaphor a   a inside p's object, or a precedes p
// An edge x -> y means x cannot be decided before y.
struct DependencyGraph {
  struct Node {
    std::string id;
    Module module = Module::kAnaphora;
    int position = 0;
  };

  std::vector<Node> nodes;                // anaphors, then PPs
  std::vector<std::vector<int>> depends;  // node -> prerequisites

  int index_of(const std::string &id) const;
  bool has_edge(const std::string &from, const std::string &to) const;
  size_t edge_count() const;

  // Round in which each node becomes decidable: an anaphor one round after
  // its latest prerequisite, a PP in the same round as its latest one.
  // Nodes on or behind a cycle get -1.
  std::vector<int> rounds() const;
  bool acyclic() const;
};

DependencyGraph build_dependency_graph(const AnnotatedSentence &initial);

struct OracleResult {
  AnnotatedSentence state;             // final
  std::vector<std::string> order;      // processing order
  std::map<std::string, int> round;    // -1 for deadlocked nodes
  std::vector<std::string> deadlocked;
  bool acyclic = true;
  // Pass count the alternating scheduler should need for this graph.
  int expected_module_calls = 0;
};

// Decides every node in topological order, sorted by (round, anaphors
// before PPs, token position), with the same resolve/attach rules as the
// engine but no passes or skip predicates. Nodes that never become
// decidable are marked "deadlock". Throws ValidationError.
OracleResult oracle_resolve(const AnnotatedSentence &s, const DiscourseState &d,
                            const AttachmentRuleTable &rules,
                            const SemanticLexicon &lex);

struct OracleDocumentResult {
  std::vector<OracleResult> sentences;
  DiscourseState discourse;
};

OracleDocumentResult oracle_resolve_document(
    const Document &doc, const AttachmentRuleTable &rules,
    const SemanticLexicon &lex,
    const SalienceOrder &order = subject_first_salience);

struct EquivalenceReport {
  std::vector<std::string> diffs;

  bool equal() const { return diffs.empty(); }
};

// Equal iff every anaphor and PP has the same final status, antecedent,
// site and failure reason.
EquivalenceReport compare(const AnnotatedSentence &engine,
                          const AnnotatedSentence &oracle);
EquivalenceReport compare(const SentenceResult &engine,
                          const OracleResult &oracle);

// Structural checks on one engine run: status monotonicity and
// no-redundancy over the trace, module order, the termination bound,
// outcome consistency, referential integrity and role-fill consistency.
// `before` is the discourse state the sentence was resolved against.
// Returns one message per violation.
std::vector<std::string> check_invariants(const SentenceResult &r,
                                          const DiscourseState &before);

}  // namespace coresolve

#endif  // CORESOLVE_ORACLE_H_
