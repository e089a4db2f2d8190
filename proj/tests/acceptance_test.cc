// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coresolve/fuzz.h"
#include "coresolve/oracle.h"
#include "test_support.h"

using namespace coresolve;
using coresolve::testing::Fixtures;
using coresolve::testing::fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int failures = 0;

void report(int n, bool ok, const std::string &what, const std::string &detail) {
  std::printf("[%s] %d %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::vector<std::string> lines(const Trace &t) {
  std::vector<std::string> out;
  for (const auto &e : t) out.push_back(format_event(e));
  return out;
}

struct FixtureRun {
  std::string doc;
  std::vector<SentenceResult> engine;
  std::vector<OracleResult> oracle;
};

std::vector<FixtureRun> run_fixtures() {
  const Fixtures &f = fixtures();
  std::vector<FixtureRun> out;
  for (const auto &doc : f.all()) {
    FixtureRun r;
    r.doc = doc.id;
    r.engine = resolve_document(doc, f.rules, f.lex).sentences;
    r.oracle = oracle_resolve_document(doc, f.rules, f.lex).sentences;
    out.push_back(std::move(r));
  }
  return out;
}

int terminal_repeats(const Trace &t) {
  std::set<std::string> done;
  int repeats = 0;
  for (const auto &e : t) {
    if (done.count(e.target)) ++repeats;
    if (is_terminal(e.action)) done.insert(e.target);
  }
  return repeats;
}

}  // namespace

int main() {
  const Fixtures &f = fixtures();

  {
    const AnnotatedSentence &raw = f.doc("ex2").sentences[0];
    auto start = Clock::now();
    SentenceResult r = resolve_sentence(raw, {}, f.rules, f.lex);
    double ms = ms_since(start);
    std::vector<std::string> golden = {
        "pass=1 module=ANAPHORA action=SKIP target=a_its detail=blocked-by:p_since",
        "pass=2 module=ATTACHMENT action=ATTACH target=p_since detail=f_suspend.TIME",
        "pass=2 module=ATTACHMENT action=ATTACH target=p_at detail=f_suspend.CAUSE",
        "pass=2 module=ATTACHMENT action=SKIP target=p_in detail=object-contains-anaphor:a_its",
        "pass=2 module=ATTACHMENT action=SKIP target=p_on detail=preceded-by-anaphor:a_its",
        "pass=3 module=ANAPHORA action=RESOLVE target=a_its detail=e_firm",
        "pass=4 module=ATTACHMENT action=ATTACH target=p_in detail=f_surge.THEME",
        "pass=4 module=ATTACHMENT action=ATTACH target=p_on detail=f_surge.CAUSE",
    };
    bool ok = lines(r.trace) == golden && r.module_calls == 4 && ms < 10.0;
    std::ostringstream d;
    d << "module_calls=" << r.module_calls << " events=" << r.trace.size()
      << " runtime_ms=" << ms;
    report(1, ok, "ex2 golden four-pass trace", d.str());
  }

  {
    SentenceResult r =
        resolve_sentence(f.doc("ex1").sentences[0], {}, f.rules, f.lex);
    bool that_first = !r.trace.empty() && r.trace[0].target == "a_that" &&
                      r.trace[0].pass_number == 1 &&
                      r.trace[0].action == Action::kResolve;
    bool bci_after = false;
    for (size_t i = 1; i < r.trace.size(); ++i) {
      if (r.trace[i].target == "p_of_bci" && r.trace[i].action == Action::kAttach) {
        bci_after = true;
      }
    }
    std::ostringstream d;
    d << "module_calls=" << r.module_calls << " that->"
      << r.state.anaphors[0].antecedent();
    report(2, that_first && bci_after && r.module_calls == 2,
           "ex1 resolves \"that\" before attaching \"of BCI\"", d.str());
  }

  {
    SentenceResult r =
        resolve_sentence(f.doc("chain").sentences[0], {}, f.rules, f.lex);
    std::ostringstream d;
    d << "module_calls=" << r.module_calls
      << " outcome=" << outcome_name(r.outcome);
    report(3,
           r.module_calls > 4 && r.outcome == Outcome::kComplete &&
               r.state.open_decisions() == 0,
           "three-PP chain needs more than two cycles", d.str());
  }

  std::vector<FixtureRun> runs = run_fixtures();
  auto start = Clock::now();
  FuzzSummary fuzz = run_fuzz(10000, 20261018);
  double fuzz_s = ms_since(start) / 1000.0;

  {
    int diffs = 0;
    for (const auto &r : runs) {
      for (size_t i = 0; i < r.engine.size(); ++i) {
        diffs += static_cast<int>(compare(r.engine[i], r.oracle[i]).diffs.size());
      }
    }
    std::ostringstream d;
    d << "fixture_diffs=" << diffs << " sentences=" << fuzz.sentences
      << " oracle_diffs=" << fuzz.oracle_diffs
      << " schedule_diffs=" << fuzz.schedule_diffs << " cyclic=" << fuzz.cyclic
      << " runtime_s=" << fuzz_s;
    report(4,
           diffs == 0 && fuzz.sentences == 10000 && fuzz.oracle_diffs == 0 &&
               fuzz.schedule_diffs == 0 && fuzz.invariant_violations == 0 &&
               fuzz_s < 60.0,
           "engine equals oracle on fixtures and 10000 random sentences",
           d.str());
  }

  {
    int over = 0;
    for (const auto &r : runs) {
      for (const auto &s : r.engine) {
        int a = static_cast<int>(s.state.anaphors.size());
        int p = static_cast<int>(s.state.pps.size());
        if (s.module_calls > 2 * (a + p + 1)) ++over;
      }
    }
    std::ostringstream d;
    d << "fixture_violations=" << over
      << " random_violations=" << fuzz.bound_violations
      << " max_module_calls=" << fuzz.max_module_calls;
    report(5, over == 0 && fuzz.bound_violations == 0,
           "module_calls <= 2(A+P+1)", d.str());
  }

  {
    int repeats = 0;
    for (const auto &r : runs) {
      for (const auto &s : r.engine) repeats += terminal_repeats(s.trace);
    }
    std::ostringstream d;
    d << "fixture_repeats=" << repeats
      << " random_repeats=" << fuzz.redundancy_violations;
    report(6, repeats == 0 && fuzz.redundancy_violations == 0,
           "no target is visited after a terminal action", d.str());
  }

  {
    const AnnotatedSentence &raw = f.doc("cycle").sentences[0];
    SentenceResult e = resolve_sentence(raw, {}, f.rules, f.lex);
    OracleResult o = oracle_resolve(raw, {}, f.rules, f.lex);
    bool all_deadlock = true;
    for (const auto &a : e.state.anaphors) all_deadlock &= a.reason() == "deadlock";
    for (const auto &p : e.state.pps) all_deadlock &= p.reason() == "deadlock";
    bool ok = e.outcome == Outcome::kDeadlocked && !o.acyclic &&
              e.deadlocked == o.deadlocked && e.deadlocked.size() == 4 &&
              all_deadlock && compare(e, o).equal() &&
              fuzz.cycle_outcome_diffs == 0;
    std::ostringstream d;
    d << "engine_deadlocked=" << e.deadlocked.size()
      << " oracle_deadlocked=" << o.deadlocked.size()
      << " random_cycle_mismatches=" << fuzz.cycle_outcome_diffs;
    report(7, ok, "cyclic fixture deadlocks identically in engine and oracle",
           d.str());
  }

  {
    bool ok = load_lexicon(serialize_lexicon(f.lex)) == f.lex &&
              load_rules(serialize_rules(f.rules), f.lex) == f.rules &&
              load_rules(serialize_rules(f.rules_alt), f.lex) == f.rules_alt;
    int docs = 0;
    for (const auto *set : {&f.corpus, &f.discourse, &f.deadlock}) {
      ok = ok && load_corpus(serialize_corpus(*set), f.lex) == *set;
      docs += static_cast<int>(set->size());
    }
    report(8, ok, "load, serialize, load round-trips every fixture",
           "documents=" + std::to_string(docs));
  }

  std::printf("%s\n", failures == 0 ? "all criteria passed"
                                    : "some criteria FAILED");
  return failures == 0 ? 0 : 1;
}
