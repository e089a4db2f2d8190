#include <stdexcept>

#include "coresolve/corpus_io.h"
#include "coresolve/model.h"
#include "coresolve/trace.h"
#include "doctest.h"
#include "test_support.h"

using namespace coresolve;
using coresolve::testing::fixture;
using coresolve::testing::Fixtures;
using coresolve::testing::fixtures;
using coresolve::testing::initial;

TEST_CASE("agreement: unspecified features match anything") {
  Agreement it{Gender::kNeut, Number::kSing};
  Agreement they{Gender::kUnspec, Number::kPlur};
  CHECK(compatible(it, Agreement{Gender::kNeut, Number::kSing}));
  CHECK_FALSE(compatible(it, they));
  CHECK(compatible(Agreement{}, it));
  CHECK_FALSE(compatible(Agreement{Gender::kMasc, Number::kUnspec},
                         Agreement{Gender::kFem, Number::kUnspec}));
}

TEST_CASE("anaphor status only moves forward") {
  Anaphor a;
  a.id = "a1";
  CHECK(a.open());
  a.mark_skipped("blocked-by:p1");
  CHECK(a.status() == AnaphorStatus::kSkipped);
  a.mark_skipped("blocked-by:p2");
  a.mark_resolved("e1", "ORGANIZATION", "firm");
  CHECK_FALSE(a.open());
  CHECK(a.antecedent() == "e1");
  CHECK_THROWS_AS(a.mark_skipped("x"), std::logic_error);
  CHECK_THROWS_AS(a.mark_unresolvable("x"), std::logic_error);
  a.reset();
  CHECK(a.status() == AnaphorStatus::kPending);
  CHECK(a.antecedent().empty());
}

TEST_CASE("pp attaches only to a candidate site") {
  PrepPhrase p;
  p.id = "p1";
  p.candidate_sites = {SiteRef::frame_role("f", "TIME"), SiteRef::np_modifier("e")};
  CHECK(p.ambiguous());
  CHECK_THROWS_AS(p.mark_attached(SiteRef::np_modifier("other")), std::logic_error);
  p.mark_attached(SiteRef::np_modifier("e"));
  CHECK(p.site()->to_string() == "np:e");
  CHECK_THROWS_AS(p.mark_unattached("no-rule"), std::logic_error);
}

TEST_CASE("site names") {
  CHECK(SiteRef::frame_role("f_surge", "THEME").to_string() == "f_surge.THEME");
  CHECK(SiteRef::np_modifier("e_firm").to_string() == "np:e_firm");
}

TEST_CASE("trace events round-trip through their text form") {
  TraceEvent e{2, Module::kAttachment, "p3", Action::kAttach, "f_surge.THEME"};
  std::string line = format_event(e);
  CHECK(line == "pass=2 module=ATTACHMENT action=ATTACH target=p3 detail=f_surge.THEME");
  auto back = parse_event(line);
  REQUIRE(back);
  CHECK(*back == e);
  CHECK_FALSE(parse_event("pass=x module=ATTACHMENT"));
  CHECK_FALSE(parse_event("pass=1 module=PARSER action=ATTACH target=p detail=d"));
  CHECK(is_terminal(Action::kUnattached));
  CHECK_FALSE(is_terminal(Action::kSkip));
}

TEST_CASE("focus list prepend removes older duplicates") {
  DiscourseState d;
  d.prepend({{"e1", 0}, {"e2", 0}});
  d.prepend({{"e3", 1}, {"e1", 1}});
  REQUIRE(d.focus_list.size() == 3);
  CHECK(d.focus_list[0].entity == "e3");
  CHECK(d.focus_list[1].entity == "e1");
  CHECK(d.focus_list[1].sentence_index == 1);
  CHECK(d.focus_list[2].entity == "e2");
}

TEST_CASE("fixture sentences validate") {
  for (const auto &doc : fixtures().all()) {
    INFO(doc.id);
    CHECK(validate_document(doc, fixtures().lex).ok());
  }
}

TEST_CASE("validation reports structural problems") {
  const SemanticLexicon &lex = fixtures().lex;
  AnnotatedSentence s = initial("ex2");

  SUBCASE("empty site list") {
    s.pps[0].candidate_sites.clear();
    CHECK(validate_sentence(s, lex).mentions("empty candidate_sites"));
  }
  SUBCASE("anaphor on a full NP") {
    s.anaphors[0].np_id = "e_shares";
    CHECK(validate_sentence(s, lex).mentions("anaphor references non-pronoun NP"));
  }
  SUBCASE("dangling site") {
    s.pps[0].candidate_sites.push_back(SiteRef::frame_role("f_none", "TIME"));
    CHECK_FALSE(validate_sentence(s, lex).ok());
  }
  SUBCASE("unknown object") {
    s.pps[1].object_np = "e_missing";
    CHECK_FALSE(validate_sentence(s, lex).ok());
  }
  SUBCASE("pronoun without anaphor") {
    s.anaphors.clear();
    CHECK_FALSE(validate_sentence(s, lex).ok());
  }
  SUBCASE("initial state refuses invalid input") {
    s.pps[0].candidate_sites.clear();
    CHECK_THROWS_AS(build_initial_state(s, lex), ValidationError);
  }
}

TEST_CASE("initial state clears decisions and slots") {
  AnnotatedSentence s = initial("ex2");
  s.anaphors[0].mark_resolved("e_firm", "ORGANIZATION", "firm");
  s.frames[0].roles.begin()->second.filler = "e_oct";
  AnnotatedSentence fresh = build_initial_state(s, fixtures().lex);
  CHECK(fresh.anaphors[0].status() == AnaphorStatus::kPending);
  for (const auto &f : fresh.frames) {
    for (const auto &[role, slot] : f.roles) CHECK_FALSE(slot.filler);
  }
  CHECK(fresh.open_decisions() == 5);
}

TEST_CASE("rule validation") {
  const SemanticLexicon &lex = fixtures().lex;
  AttachmentRuleTable t;
  t.rules.push_back({"surge", "in", "ATTRIBUTE", "THEME", 10});
  CHECK_NOTHROW(validate_rules(t, lex));

  SUBCASE("score must be positive") {
    t.rules[0].score = 0;
    CHECK_THROWS_AS(validate_rules(t, lex), ValidationError);
  }
  SUBCASE("undefined class") {
    t.rules.push_back({"surge", "on", "NOT-A-CLASS", "CAUSE", 1});
    CHECK_THROWS_AS(validate_rules(t, lex), ReferenceError);
  }
  SUBCASE("same key, same score, different role") {
    t.rules.push_back({"surge", "in", "ATTRIBUTE", "CAUSE", 10});
    CHECK_THROWS_AS(validate_rules(t, lex), ValidationError);
  }
  SUBCASE("same key with a different score is allowed") {
    t.rules.push_back({"surge", "in", "ATTRIBUTE", "CAUSE", 4});
    CHECK_NOTHROW(validate_rules(t, lex));
  }
}

TEST_CASE("loading rejects bad input") {
  const SemanticLexicon &lex = fixtures().lex;
  CHECK_THROWS_AS(load_lexicon(""), ParseError);
  CHECK_THROWS_AS(load_lexicon("{\"classes\": ["), ParseError);
  CHECK_THROWS_AS(load_rules("", lex), ParseError);
  CHECK_THROWS_AS(load_corpus("   ", lex), ParseError);
  CHECK_THROWS_AS(load_rules(R"({"rules": [{"governor": "x", "prep": "in",
      "object_class": "NOPE", "role": "R", "score": 1}]})", lex),
                  ReferenceError);
  CHECK_THROWS_AS(load_rules(R"({"rules": [{"governor": "x", "prep": "in",
      "role": "R", "score": 1}]})", lex),
                  ParseError);
  CHECK_THROWS_AS(load_corpus(read_file(fixture("invalid_corpus.json")), lex),
                  ValidationError);
  CHECK_THROWS_AS(read_file(fixture("missing.json")), IoError);
}

TEST_CASE("lexicon entries with an undefined class are rejected") {
  CHECK_THROWS_AS(load_lexicon(R"({"classes": ["A"],
      "entries": {"x": {"class": "B", "gender": "neut", "number": "sing"}}})"),
                  ReferenceError);
}

TEST_CASE("load, serialize, load is the identity") {
  const Fixtures &f = fixtures();
  CHECK(load_lexicon(serialize_lexicon(f.lex)) == f.lex);
  CHECK(load_rules(serialize_rules(f.rules), f.lex) == f.rules);
  CHECK(load_rules(serialize_rules(f.rules_alt), f.lex) == f.rules_alt);
  for (const auto *set : {&f.corpus, &f.discourse, &f.deadlock}) {
    std::string text = serialize_corpus(*set);
    CHECK(load_corpus(text, f.lex) == *set);
    CHECK(serialize_corpus(load_corpus(text, f.lex)) == text);
  }
}

TEST_CASE("NP features default from the lexicon") {
  AnnotatedSentence s = initial("ex2");
  const NounPhrase *oct = s.find_np("e_oct");
  REQUIRE(oct);
  CHECK(oct->semantic_class == "TIME-POINT");
  CHECK(oct->proper);
  const NounPhrase *shares = s.find_np("e_shares");
  REQUIRE(shares);
  CHECK(shares->agreement.number == Number::kPlur);
  CHECK(shares->subject);
}
