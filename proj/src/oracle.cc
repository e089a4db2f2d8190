#include "coresolve/oracle.h"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "coresolve/anaphora.h"
#include "coresolve/attachment.h"

namespace coresolve {

int DependencyGraph::index_of(const std::string &id) const {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

bool DependencyGraph::has_edge(const std::string &from,
                               const std::string &to) const {
  int f = index_of(from);
  int t = index_of(to);
  if (f < 0 || t < 0) return false;
  const auto &deps = depends[f];
  return std::find(deps.begin(), deps.end(), t) != deps.end();
}

size_t DependencyGraph::edge_count() const {
  size_t n = 0;
  for (const auto &deps : depends) n += deps.size();
  return n;
}

std::vector<int> DependencyGraph::rounds() const {
  const size_t n = nodes.size();
  std::vector<std::vector<int>> dependents(n);
  std::vector<int> waiting(n, 0);
  for (size_t v = 0; v < n; ++v) {
    waiting[v] = static_cast<int>(depends[v].size());
    for (int u : depends[v]) dependents[u].push_back(static_cast<int>(v));
  }
  std::vector<int> round(n, 1);
  std::deque<int> ready;
  for (size_t v = 0; v < n; ++v) {
    if (waiting[v] == 0) ready.push_back(static_cast<int>(v));
  }
  std::vector<bool> done(n, false);
  while (!ready.empty()) {
    int u = ready.front();
    ready.pop_front();
    done[u] = true;
    for (int v : dependents[u]) {
      // Anaphora runs first in a round, so an anaphor waiting on a PP
      // slips to the next round while a PP waiting on an anaphor does not.
      int earliest = nodes[v].module == Module::kAnaphora ? round[u] + 1
                                                          : round[u];
      round[v] = std::max(round[v], earliest);
      if (--waiting[v] == 0) ready.push_back(v);
    }
  }
  for (size_t v = 0; v < n; ++v) {
    if (!done[v]) round[v] = -1;
  }
  return round;
}

bool DependencyGraph::acyclic() const {
  auto r = rounds();
  return std::none_of(r.begin(), r.end(), [](int x) { return x < 0; });
}

DependencyGraph build_dependency_graph(const AnnotatedSentence &initial) {
  DependencyGraph g;
  for (const auto &a : initial.anaphors) {
    g.nodes.push_back({a.id, Module::kAnaphora, a.position});
  }
  for (const auto &p : initial.pps) {
    g.nodes.push_back({p.id, Module::kAttachment, p.position});
  }
  g.depends.resize(g.nodes.size());
  const int anaphors = static_cast<int>(initial.anaphors.size());

  for (int i = 0; i < anaphors; ++i) {
    const Anaphor &a = initial.anaphors[i];
    for (size_t j = 0; j < initial.pps.size(); ++j) {
      const PrepPhrase &p = initial.pps[j];
      const NounPhrase *obj = initial.find_np(p.object_np);
      bool in_object = obj != nullptr && obj->contains(a.position);
      int pp_node = anaphors + static_cast<int>(j);
      if (p.position < a.position && p.candidate_sites.size() >= 2 &&
          !in_object) {
        g.depends[i].push_back(pp_node);
      }
      if (in_object || a.position < p.position) {
        g.depends[pp_node].push_back(i);
      }
    }
  }
  return g;
}

OracleResult oracle_resolve(const AnnotatedSentence &s, const DiscourseState &d,
                            const AttachmentRuleTable &rules,
                            const SemanticLexicon &lex) {
  OracleResult result;
  result.state = build_initial_state(s, lex);
  AnnotatedSentence &state = result.state;
  DependencyGraph g = build_dependency_graph(state);
  std::vector<int> round = g.rounds();

  std::vector<int> schedule;
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    result.round[g.nodes[i].id] = round[i];
    if (round[i] > 0) schedule.push_back(static_cast<int>(i));
  }
  std::sort(schedule.begin(), schedule.end(), [&](int x, int y) {
    return std::make_tuple(round[x], g.nodes[x].module, g.nodes[x].position) <
           std::make_tuple(round[y], g.nodes[y].module, g.nodes[y].position);
  });

  int last_anaphor_round = 0;
  int last_pp_round = 0;
  for (int node : schedule) {
    const auto &n = g.nodes[node];
    result.order.push_back(n.id);
    if (n.module == Module::kAnaphora) {
      Anaphor &a = state.anaphors[node];
      Resolution r = resolve_anaphor(a, candidate_antecedents(a, state, d, lex));
      if (r.resolved) {
        a.mark_resolved(r.antecedent.entity, r.antecedent.semantic_class,
                        r.antecedent.head_lemma);
      } else {
        a.mark_unresolvable(r.reason);
      }
      last_anaphor_round = std::max(last_anaphor_round, round[node]);
    } else {
      attach_pp(state, n.id, rules, lex);
      last_pp_round = std::max(last_pp_round, round[node]);
    }
  }

  result.deadlocked = mark_deadlocked(state);
  result.acyclic = result.deadlocked.empty();

  // A zero-progress round follows the last productive one when anything is
  // stuck; otherwise the run ends after the last pass that decided
  // something, and never before the first two passes.
  int last_round = std::max(last_anaphor_round, last_pp_round);
  int calls;
  if (!result.deadlocked.empty()) {
    calls = 2 * (last_round + 1);
  } else if (last_pp_round >= last_anaphor_round) {
    calls = 2 * last_pp_round;
  } else {
    calls = 2 * last_anaphor_round - 1;
  }
  result.expected_module_calls = std::max(calls, 2);
  return result;
}

OracleDocumentResult oracle_resolve_document(const Document &doc,
                                             const AttachmentRuleTable &rules,
                                             const SemanticLexicon &lex,
                                             const SalienceOrder &order) {
  ValidationReport report = validate_document(doc, lex);
  if (!report.ok()) {
    throw ValidationError("document " + doc.id + ": " + report.to_string());
  }
  OracleDocumentResult result;
  for (const auto &s : doc.sentences) {
    OracleResult r = oracle_resolve(s, result.discourse, rules, lex);
    result.discourse = update_discourse(result.discourse, r.state, order);
    result.sentences.push_back(std::move(r));
  }
  return result;
}

EquivalenceReport compare(const AnnotatedSentence &engine,
                          const AnnotatedSentence &oracle) {
  EquivalenceReport report;
  auto diff = [&report](const std::string &id, const std::string &what,
                        const std::string &e, const std::string &o) {
    if (e != o) {
      report.diffs.push_back(id + " " + what + ": engine=" + e +
                             " oracle=" + o);
    }
  };
  if (engine.anaphors.size() != oracle.anaphors.size() ||
      engine.pps.size() != oracle.pps.size()) {
    report.diffs.push_back("sentence shapes differ");
    return report;
  }
  for (size_t i = 0; i < engine.anaphors.size(); ++i) {
    const Anaphor &e = engine.anaphors[i];
    const Anaphor &o = oracle.anaphors[i];
    diff(e.id, "id", e.id, o.id);
    diff(e.id, "status", std::string(status_name(e.status())),
         std::string(status_name(o.status())));
    diff(e.id, "antecedent", e.antecedent(), o.antecedent());
    if (!e.open()) diff(e.id, "reason", e.reason(), o.reason());
  }
  for (size_t i = 0; i < engine.pps.size(); ++i) {
    const PrepPhrase &e = engine.pps[i];
    const PrepPhrase &o = oracle.pps[i];
    diff(e.id, "id", e.id, o.id);
    diff(e.id, "status", std::string(status_name(e.status())),
         std::string(status_name(o.status())));
    diff(e.id, "site", e.site() ? e.site()->to_string() : "-",
         o.site() ? o.site()->to_string() : "-");
    if (!e.open()) diff(e.id, "reason", e.reason(), o.reason());
  }
  return report;
}

EquivalenceReport compare(const SentenceResult &engine,
                          const OracleResult &oracle) {
  return compare(engine.state, oracle.state);
}

std::vector<std::string> check_invariants(const SentenceResult &r,
                                          const DiscourseState &before) {
  std::vector<std::string> out;
  const AnnotatedSentence &s = r.state;
  const int items = static_cast<int>(s.anaphors.size() + s.pps.size());

  if (r.module_calls < 2) out.push_back("fewer than two passes ran");
  if (r.module_calls > 2 * (items + 1)) {
    out.push_back("module_calls " + std::to_string(r.module_calls) +
                  " exceeds 2*(A+P+1)");
  }

  std::map<std::string, const TraceEvent *> terminal;
  int last_pass = 0;
  for (const auto &e : r.trace) {
    if (e.pass_number < last_pass) out.push_back("trace passes regress");
    last_pass = e.pass_number;
    Module expected = e.pass_number % 2 == 1 ? Module::kAnaphora
                                             : Module::kAttachment;
    if (e.module != expected) {
      out.push_back(e.target + ": " + std::string(module_name(e.module)) +
                    " event in pass " + std::to_string(e.pass_number));
    }
    if (e.pass_number > r.module_calls) {
      out.push_back(e.target + ": event beyond the last pass");
    }
    if (terminal.count(e.target) > 0) {
      out.push_back(e.target + ": revisited after a terminal action");
    }
    if (is_terminal(e.action)) terminal[e.target] = &e;
  }

  if ((r.outcome == Outcome::kComplete) != r.deadlocked.empty()) {
    out.push_back("outcome disagrees with deadlocked list");
  }
  if (s.open_decisions() != 0) out.push_back("open decisions remain");
  std::set<std::string> deadlocked(r.deadlocked.begin(), r.deadlocked.end());

  for (const auto &a : s.anaphors) {
    auto it = terminal.find(a.id);
    if (it == terminal.end()) {
      if (deadlocked.count(a.id) == 0) {
        out.push_back(a.id + ": no terminal action and not deadlocked");
      }
    } else if (deadlocked.count(a.id) > 0) {
      out.push_back(a.id + ": deadlocked after a terminal action");
    } else if (it->second->action == Action::kResolve) {
      if (a.status() != AnaphorStatus::kResolved ||
          a.antecedent() != it->second->detail) {
        out.push_back(a.id + ": final state disagrees with trace");
      }
    } else if (a.status() != AnaphorStatus::kUnresolvable) {
      out.push_back(a.id + ": final state disagrees with trace");
    }
    if (a.status() == AnaphorStatus::kResolved) {
      const NounPhrase *np = s.find_np(a.antecedent());
      bool known = (np != nullptr && !np->is_pronoun) ||
                   before.find(a.antecedent()) != nullptr;
      if (!known) out.push_back(a.id + ": dangling antecedent");
    }
  }

  int attached = 0;
  int filled = 0;
  for (const auto &p : s.pps) {
    auto it = terminal.find(p.id);
    if (it == terminal.end()) {
      if (deadlocked.count(p.id) == 0) {
        out.push_back(p.id + ": no terminal action and not deadlocked");
      }
    } else if (it->second->action == Action::kAttach) {
      if (!p.site() || p.site()->to_string() != it->second->detail) {
        out.push_back(p.id + ": final state disagrees with trace");
      }
    } else if (p.status() != PPStatus::kUnattached) {
      out.push_back(p.id + ": final state disagrees with trace");
    }
    if (p.status() != PPStatus::kAttached) continue;
    ++attached;
    const SiteRef &site = *p.site();
    if (!s.site_exists(site) ||
        std::find(p.candidate_sites.begin(), p.candidate_sites.end(), site) ==
            p.candidate_sites.end()) {
      out.push_back(p.id + ": dangling site " + site.to_string());
      continue;
    }
    if (site.kind == SiteRef::Kind::kFrameRole) {
      const RoleSlot &slot = s.find_frame(site.frame)->roles.at(site.role);
      if (slot.filler != p.object_np) {
        out.push_back(p.id + ": role " + site.to_string() +
                      " not filled with its object");
      }
    } else {
      const auto &mods = s.find_np(site.np)->modifiers;
      if (std::count(mods.begin(), mods.end(), p.id) != 1) {
        out.push_back(p.id + ": missing from NP modifiers");
      }
    }
  }
  for (const auto &f : s.frames) {
    for (const auto &[role, slot] : f.roles) {
      if (!slot.filler) continue;
      ++filled;
      SiteRef site = SiteRef::frame_role(f.id, role);
      bool owned = std::any_of(s.pps.begin(), s.pps.end(), [&](const auto &p) {
        return p.site() == site && p.object_np == *slot.filler;
      });
      if (!owned) out.push_back(site.to_string() + ": filled without a PP");
    }
  }
  for (const auto &np : s.nps) filled += static_cast<int>(np.modifiers.size());
  if (filled != attached) {
    out.push_back("filled slots " + std::to_string(filled) +
                  " != attached PPs " + std::to_string(attached));
  }
  return out;
}

}  // namespace coresolve
