"""Coordinated pronoun resolution and PP attachment."""

import json
from pathlib import Path

from ._core import (
    ConfigError,
    Corpus,
    IoError,
    Lexicon,
    ParseError,
    ReferenceError,
    Rules,
    ValidationError,
    fuzz,
    oracle_diffs,
    resolve_json,
    stats,
)

__all__ = [
    "ConfigError",
    "Corpus",
    "IoError",
    "Lexicon",
    "ParseError",
    "ReferenceError",
    "Rules",
    "ValidationError",
    "fuzz",
    "load",
    "oracle_diffs",
    "resolve",
    "stats",
]


def load(corpus, lexicon, rules):
    """Reads the three JSON files. Returns (corpus, lexicon, rules)."""
    lex = Lexicon.from_json(Path(lexicon).read_text())
    table = Rules.from_json(Path(rules).read_text(), lex)
    docs = Corpus.from_json(Path(corpus).read_text(), lex)
    return docs, lex, table


def resolve(corpus, rules, lexicon):
    """Resolves every document and returns the decoded results."""
    return json.loads(resolve_json(corpus, rules, lexicon))["documents"]
