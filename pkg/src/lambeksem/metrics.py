"""Complexity instrumentation: order statistics, counting bounds, and a
linearity audit of the lexicon."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .categories import count_atoms, order
from .lexicon import Lexicon
from .terms import OccurrenceClass, classify_occurrences

_SEVERITY = {
    OccurrenceClass.LINEAR: 0,
    OccurrenceClass.AFFINE: 1,
    OccurrenceClass.RELEVANT: 2,
    OccurrenceClass.UNRESTRICTED: 3,
}


@dataclass(frozen=True)
class GrammarStats:
    max_order: int
    total_senses: int
    atom_count_per_sense: tuple[tuple[int, int], ...]  # (atom count, frequency)
    linearity_audit: tuple[tuple[str, OccurrenceClass], ...]

    def as_record(self) -> dict:
        return {
            "max_order": self.max_order,
            "total_senses": self.total_senses,
            "atom_count_per_sense": {str(k): v for k, v in self.atom_count_per_sense},
            "linearity_audit": {w: c.value for w, c in self.linearity_audit},
        }


def grammar_order(lexicon: Lexicon) -> int:
    """Maximum order over all sense categories; 0 for an empty lexicon."""
    orders = [order(s.category) for e in lexicon.entries for s in e.senses]
    return max(orders, default=0)


def grammar_stats(lexicon: Lexicon) -> GrammarStats:
    counts = Counter(count_atoms(s.category)
                     for e in lexicon.entries for s in e.senses)
    audit = []
    for e in lexicon.entries:
        classes = [classify_occurrences(s.term) for s in e.senses]
        worst = max(classes, key=lambda c: _SEVERITY[c])
        audit.append((e.word, worst))
    return GrammarStats(
        max_order=grammar_order(lexicon),
        total_senses=sum(len(e.senses) for e in lexicon.entries),
        atom_count_per_sense=tuple(sorted(counts.items())),
        linearity_audit=tuple(audit),
    )


def catalan(n: int) -> int:
    """n-th Catalan number, exact."""
    if n < 0:
        raise ValueError("catalan is defined on naturals")
    return math.comb(2 * n, n) // (n + 1)


def quantifier_count(lexicon: Lexicon, words: list[str] | tuple[str, ...]) -> int:
    """Number of phrase words carrying a generalized-quantifier sense
    (per the lexicon's quantifier annotations)."""
    n = 0
    for w in words:
        entry = lexicon.entry(w)
        if entry is not None and any(s.quantifier for s in entry.senses):
            n += 1
    return n


@dataclass(frozen=True)
class ReadingReport:
    """Observed readings against the n! scope expectation.

    `known_invalid` counts scope permutations that are independently
    known to be ill-formed (e.g. ones with unbound variables), so the
    reference expectation is n! - known_invalid."""
    words: tuple[str, ...]
    observed: int
    quantifier_count: int
    factorial_expectation: int
    known_invalid: int
    valid_expectation: int
    shortfall: int
    catalan_words: int
    catalan_quantifiers: int

    def as_record(self) -> dict:
        return {
            "observed": self.observed,
            "quantifier_count": self.quantifier_count,
            "factorial_expectation": self.factorial_expectation,
            "known_invalid": self.known_invalid,
            "valid_expectation": self.valid_expectation,
            "shortfall": self.shortfall,
            "catalan_words": self.catalan_words,
            "catalan_quantifiers": self.catalan_quantifiers,
        }


def reading_report(words: list[str] | tuple[str, ...], readings,
                   quantifier_count: int,
                   known_invalid: int = 0) -> ReadingReport:
    observed = readings if isinstance(readings, int) else len(readings)
    expectation = math.factorial(quantifier_count)
    valid = expectation - known_invalid
    return ReadingReport(
        words=tuple(words),
        observed=observed,
        quantifier_count=quantifier_count,
        factorial_expectation=expectation,
        known_invalid=known_invalid,
        valid_expectation=valid,
        shortfall=valid - observed,
        catalan_words=catalan(len(words)),
        catalan_quantifiers=catalan(quantifier_count),
    )
