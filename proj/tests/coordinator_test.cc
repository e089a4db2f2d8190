#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "coresolve/coordinator.h"
#include "doctest.h"
#include "test_support.h"

using namespace coresolve;
using coresolve::testing::Fixtures;
using coresolve::testing::fixtures;
using coresolve::testing::initial;
using coresolve::testing::run;

namespace {

std::vector<std::string> lines(const Trace &t) {
  std::vector<std::string> out;
  for (const auto &e : t) out.push_back(format_event(e));
  return out;
}

// Module that skips everything, forever.
class Stuck : public AnaphoraModule, public AttachmentModule {
 public:
  PassProgress run_pass(AnnotatedSentence &s, const DiscourseState &, int pass,
                        Trace &trace) override {
    PassProgress p;
    for (auto &a : s.anaphors) {
      a.mark_skipped("stuck");
      trace.push_back({pass, Module::kAnaphora, a.id, Action::kSkip, "stuck"});
      ++p.skipped;
    }
    return p;
  }
  PassProgress run_pass(AnnotatedSentence &s, int pass, Trace &trace) override {
    PassProgress p;
    for (auto &pp : s.pps) {
      pp.mark_skipped("stuck");
      trace.push_back({pass, Module::kAttachment, pp.id, Action::kSkip, "stuck"});
      ++p.skipped;
    }
    return p;
  }
};

// Counts its calls and decides nothing.
class Idle : public AttachmentModule {
 public:
  int calls = 0;
  PassProgress run_pass(AnnotatedSentence &, int, Trace &) override {
    ++calls;
    return {};
  }
};

}  // namespace

TEST_CASE("ex2 needs two cycles") {
  SentenceResult r = run("ex2");
  CHECK(r.module_calls == 4);
  CHECK(r.outcome == Outcome::kComplete);
  CHECK(lines(r.trace) == std::vector<std::string>{
      "pass=1 module=ANAPHORA action=SKIP target=a_its detail=blocked-by:p_since",
      "pass=2 module=ATTACHMENT action=ATTACH target=p_since detail=f_suspend.TIME",
      "pass=2 module=ATTACHMENT action=ATTACH target=p_at detail=f_suspend.CAUSE",
      "pass=2 module=ATTACHMENT action=SKIP target=p_in detail=object-contains-anaphor:a_its",
      "pass=2 module=ATTACHMENT action=SKIP target=p_on detail=preceded-by-anaphor:a_its",
      "pass=3 module=ANAPHORA action=RESOLVE target=a_its detail=e_firm",
      "pass=4 module=ATTACHMENT action=ATTACH target=p_in detail=f_surge.THEME",
      "pass=4 module=ATTACHMENT action=ATTACH target=p_on detail=f_surge.CAUSE",
  });
  CHECK(r.state.open_decisions() == 0);
}

TEST_CASE("ex1 finishes in one cycle") {
  SentenceResult r = run("ex1");
  CHECK(r.module_calls == 2);
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0].pass_number == 1);
  CHECK(r.trace[0].target == "a_that");
  CHECK(r.trace[0].action == Action::kResolve);
  CHECK(r.trace[2].target == "p_of_bci");
  CHECK(r.trace[2].pass_number == 2);
  CHECK(r.trace[2].detail == "np:e_that");
}

TEST_CASE("a chain of three PPs takes three cycles and no extra pass") {
  SentenceResult r = run("chain");
  CHECK(r.module_calls == 6);
  CHECK(r.outcome == Outcome::kComplete);
  CHECK(r.trace.back().pass_number == 6);
  for (const auto &a : r.state.anaphors) CHECK(a.antecedent() == "e_lazard");
  CHECK(r.state.find_pp("q_in")->site()->to_string() == "np:e_stake");
}

TEST_CASE("a dependency cycle deadlocks after one idle cycle") {
  const Fixtures &f = fixtures();
  const Document &doc = f.doc("cycle");
  SentenceResult r = resolve_sentence(doc.sentences[0], {}, f.rules, f.lex);
  CHECK(r.outcome == Outcome::kDeadlocked);
  CHECK(r.module_calls == 2);
  CHECK(r.deadlocked ==
        std::vector<std::string>{"a_it1", "a_it2", "p_for", "p_in"});
  for (const auto &a : r.state.anaphors) {
    CHECK(a.status() == AnaphorStatus::kUnresolvable);
    CHECK(a.reason() == "deadlock");
  }
  for (const auto &p : r.state.pps) {
    CHECK(p.status() == PPStatus::kUnattached);
    CHECK(p.reason() == "deadlock");
  }
  for (const auto &e : r.trace) CHECK(e.action == Action::kSkip);
}

TEST_CASE("the coordinator runs any pair of modules") {
  AnnotatedSentence s = initial("ex2");
  Stuck stuck;
  SentenceResult r = Coordinator(stuck, stuck).run(s, {});
  CHECK(r.module_calls == 2);
  CHECK(r.outcome == Outcome::kDeadlocked);
  CHECK(r.deadlocked.size() == 5);

  FocusAnaphoraModule ana(fixtures().lex);
  Idle idle;
  r = Coordinator(ana, idle).run(initial("ex1"), {});
  // Progress in pass 1 keeps the loop alive for one more cycle.
  CHECK(idle.calls == 2);
  CHECK(r.module_calls == 4);
  CHECK(r.outcome == Outcome::kDeadlocked);
  CHECK(r.deadlocked == std::vector<std::string>{"p_of_credito", "p_of_bci"});
}

TEST_CASE("a sentence with nothing to decide still runs both modules") {
  const Fixtures &f = fixtures();
  SentenceResult r =
      resolve_sentence(f.doc("two_sentences").sentences[0], {}, f.rules, f.lex);
  CHECK(r.module_calls == 2);
  CHECK(r.trace.empty());
  CHECK(r.outcome == Outcome::kComplete);
}

TEST_CASE("mark_deadlocked lists anaphors before PPs") {
  AnnotatedSentence s = initial("ex2");
  s.pps[0].mark_attached(s.pps[0].candidate_sites[1]);
  CHECK(mark_deadlocked(s) ==
        std::vector<std::string>{"a_its", "p_at", "p_in", "p_on"});
  CHECK(s.open_decisions() == 0);
  CHECK(s.pps[0].status() == PPStatus::kAttached);
}

TEST_CASE("cycle metrics summarize the trace") {
  SentenceResult r = run("ex2");
  CycleMetrics m = cycle_metrics(r);
  CHECK(m.module_calls == 4);
  CHECK(m.cycles() == 2);
  CHECK(m.progress_per_pass == std::vector<int>{0, 2, 1, 2});
  CHECK(m.skips_per_pass == std::vector<int>{1, 2, 0, 0});
  CHECK(m.anaphora_decisions == 1);
  CHECK(m.attachment_decisions == 4);

  CHECK(cycle_metrics(run("chain")).cycles() == 3);

  r.module_calls = 3;
  CHECK_THROWS_AS(cycle_metrics(r), std::logic_error);
}

TEST_CASE("documents thread the focus list between sentences") {
  const Fixtures &f = fixtures();
  DocumentResult r = resolve_document(f.doc("two_sentences"), f.rules, f.lex);
  REQUIRE(r.sentences.size() == 2);
  const AnnotatedSentence &second = r.sentences[1].state;
  CHECK(second.anaphors[0].antecedent() == "e_hanson");
  CHECK(second.pps[0].site()->to_string() == "f_pay.PURPOSE");

  std::vector<std::string> focus;
  for (const auto &e : r.discourse.focus_list) focus.push_back(e.entity);
  CHECK(focus == std::vector<std::string>{"e_hanson", "e_premium", "e_stake",
                                          "e_lazard", "e_year"});
}

TEST_CASE("salience order is pluggable") {
  const Fixtures &f = fixtures();
  SalienceOrder last_first = [](const AnnotatedSentence &s,
                                const DiscourseState &before) {
    std::vector<FocusEntry> v = subject_first_salience(s, before);
    std::reverse(v.begin(), v.end());
    return v;
  };
  DocumentResult r =
      resolve_document(f.doc("two_sentences"), f.rules, f.lex, last_first);
  // "year" becomes the focus head and agrees with "it".
  CHECK(r.sentences[1].state.anaphors[0].antecedent() == "e_year");
}

TEST_CASE("documents are validated before resolution") {
  const Fixtures &f = fixtures();
  Document broken = f.doc("ex2");
  broken.sentences[0].pps[0].candidate_sites.clear();
  CHECK_THROWS_AS(resolve_document(broken, f.rules, f.lex), ValidationError);
}

TEST_CASE("resolution is deterministic") {
  const Fixtures &f = fixtures();
  for (const auto &doc : f.all()) {
    DocumentResult a = resolve_document(doc, f.rules, f.lex);
    DocumentResult b = resolve_document(doc, f.rules, f.lex);
    REQUIRE(a.sentences.size() == b.sentences.size());
    for (size_t i = 0; i < a.sentences.size(); ++i) {
      CHECK(a.sentences[i].state == b.sentences[i].state);
      CHECK(a.sentences[i].trace == b.sentences[i].trace);
    }
    CHECK(a.discourse == b.discourse);
  }
}
