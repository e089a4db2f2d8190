from pathlib import Path

import pytest

import coresolve

FIX = Path(__file__).resolve().parents[2] / "tests" / "fixtures"


@pytest.fixture(scope="module")
def world():
    return coresolve.load(FIX / "corpus.json", FIX / "lexicon.json", FIX / "rules.json")


def test_ex2_trace(world):
    corpus, lex, rules = world
    docs = {d["id"]: d for d in coresolve.resolve(corpus, rules, lex)}
    ex2 = docs["ex2"]["sentences"][0]
    assert ex2["module_calls"] == 4
    assert ex2["trace"][0] == (
        "pass=1 module=ANAPHORA action=SKIP target=a_its detail=blocked-by:p_since"
    )
    assert ex2["anaphors"][0]["antecedent"] == "e_firm"
    assert docs["chain"]["sentences"][0]["module_calls"] == 6


def test_oracle_and_stats(world):
    corpus, lex, rules = world
    assert coresolve.oracle_diffs(corpus, rules, lex) == []
    alt = coresolve.Rules.from_json((FIX / "rules_alt.json").read_text(), lex)
    assert len(coresolve.oracle_diffs(corpus, rules, lex, alt)) == 1
    st = coresolve.stats(corpus, rules, lex)
    assert st["case_c"] == 4
    assert st["sentences"] == 3


def test_round_trip(world):
    corpus, lex, rules = world
    assert coresolve.Lexicon.from_json(lex.to_json()) == lex
    assert coresolve.Rules.from_json(rules.to_json(), lex) == rules
    assert coresolve.Corpus.from_json(corpus.to_json(), lex) == corpus
    assert corpus.document_ids == ["ex1", "ex2", "chain"]


def test_errors(world):
    _, lex, _ = world
    with pytest.raises(coresolve.ParseError):
        coresolve.Lexicon.from_json("")
    with pytest.raises(coresolve.ValidationError):
        coresolve.Corpus.from_json((FIX / "invalid_corpus.json").read_text(), lex)


def test_fuzz():
    summary = coresolve.fuzz(300, seed=3)
    assert summary["ok"], summary["failures"]
    assert summary["sentences"] == 300
