"""Derivation search for the directional sequents of the grammar.

Proofs are natural-deduction trees in long normal form, found by a
two-phase search: while the goal is complex, apply an introduction rule
(the fresh hypothesis lands at the left end for an under goal, at the
right end for an over goal); once the goal is atomic, pick a head
hypothesis and build an elimination spine, consuming the rest of the
antecedent as contiguous segments adjacent to the head.  Arguments of
the head are stripped outermost-first, so under arguments eat leftward
from the head and over arguments eat rightward.  Every beta-eta class
of derivations is produced exactly once, and the search terminates
because each subproblem is strictly smaller (counting atoms).

By default sequents with empty antecedents are not derivable; switch
`lambek_restriction` off to allow them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .categories import (Atom, Category, Over, SortMap, Under,
                         DEFAULT_SORT_MAP, category_to_text, parse_category,
                         sem_type)
from .lexicon import UnknownWord
from .terms import (BETA_ETA_LONG, Abs, App, Term, Var, canonical_key,
                    normalize)

AXIOM = "AXIOM"
UNDER_E = "UNDER_E"
UNDER_I = "UNDER_I"
OVER_E = "OVER_E"
OVER_I = "OVER_I"


class SearchLimitExceeded(Exception):
    pass


@dataclass(frozen=True)
class Hyp:
    """A hypothesis occurrence.  Ids keep discharged hypotheses apart
    from the words they sit between."""
    id: int
    category: Category


@dataclass(frozen=True)
class Sequent:
    antecedent: tuple[Category, ...]
    goal: Category

    def __str__(self) -> str:
        left = ", ".join(category_to_text(c) for c in self.antecedent)
        return f"{left} => {category_to_text(self.goal)}"


@dataclass(frozen=True)
class Proof:
    rule: str
    hyps: tuple[Hyp, ...]
    goal: Category
    premises: tuple["Proof", ...] = ()
    binder: Hyp | None = None

    @property
    def sequent(self) -> Sequent:
        return Sequent(tuple(h.category for h in self.hyps), self.goal)


@dataclass(frozen=True)
class ProveOptions:
    """`budget` caps visited search states per prove call."""
    lambek_restriction: bool = True
    budget: int = 10 ** 6


_VECTORS: dict[Category, tuple[tuple[str, int], ...]] = {}


def _vector(cat: Category) -> tuple[tuple[str, int], ...]:
    """Signed atom counts: val(a) = unit, val(A\\B) = val(B/A) = val(B) - val(A)."""
    vec = _VECTORS.get(cat)
    if vec is None:
        acc: dict[str, int] = {}

        def count(c: Category, sign: int) -> None:
            while not isinstance(c, Atom):
                count(c.argument, -sign)
                c = c.result
            acc[c.name] = acc.get(c.name, 0) + sign

        count(cat, 1)
        vec = tuple(sorted(acc.items()))
        _VECTORS[cat] = vec
    return vec


class _Search:
    def __init__(self, options: ProveOptions, first_fresh_id: int):
        self.options = options
        self.visits = 0
        self.fresh = itertools.count(first_fresh_id)

    def _balanced(self, hyps: tuple[Hyp, ...], goal: Category) -> bool:
        # Every rule preserves the count vector, so a sequent whose
        # antecedent and goal disagree on any atom has no derivation.
        acc: dict[str, int] = dict(_vector(goal))
        for h in hyps:
            for name, k in _vector(h.category):
                acc[name] = acc.get(name, 0) - k
        return not any(acc.values())

    def prove(self, hyps: tuple[Hyp, ...], goal: Category) -> list[Proof]:
        self.visits += 1
        if self.visits > self.options.budget:
            raise SearchLimitExceeded(
                f"gave up after {self.options.budget} search states")
        if self.options.lambek_restriction and not hyps:
            return []
        if not self._balanced(hyps, goal):
            return []
        if isinstance(goal, Under):
            hyp = Hyp(next(self.fresh), goal.argument)
            return [Proof(UNDER_I, hyps, goal, (p,), hyp)
                    for p in self.prove((hyp,) + hyps, goal.result)]
        if isinstance(goal, Over):
            hyp = Hyp(next(self.fresh), goal.argument)
            return [Proof(OVER_I, hyps, goal, (p,), hyp)
                    for p in self.prove(hyps + (hyp,), goal.result)]
        out: list[Proof] = []
        for i in range(len(hyps)):
            head = hyps[i]
            base = Proof(AXIOM, (head,), head.category)
            out.extend(self._spine(base, head.category, hyps[:i], hyps[i + 1:], goal))
        return out

    def _spine(self, current: Proof, cat: Category, left: tuple[Hyp, ...],
               right: tuple[Hyp, ...], goal: Atom) -> list[Proof]:
        self.visits += 1
        if self.visits > self.options.budget:
            raise SearchLimitExceeded(
                f"gave up after {self.options.budget} search states")
        if isinstance(cat, Atom):
            if cat == goal and not left and not right:
                return [current]
            return []
        out: list[Proof] = []
        if isinstance(cat, Under):
            for k in range(len(left) + 1):
                seg = left[k:]
                for arg in self.prove(seg, cat.argument):
                    step = Proof(UNDER_E, seg + current.hyps, cat.result,
                                 (arg, current))
                    out.extend(self._spine(step, cat.result, left[:k], right, goal))
        else:
            for k in range(len(right) + 1):
                seg = right[:k]
                for arg in self.prove(seg, cat.argument):
                    step = Proof(OVER_E, current.hyps + seg, cat.result,
                                 (current, arg))
                    out.extend(self._spine(step, cat.result, left, right[k:], goal))
        return out


def proof_key(proof: Proof) -> str:
    """Untyped application skeleton of the proof, used for a stable order."""
    counter = itertools.count()
    names: dict[int, str] = {h.id: f"h{pos}" for pos, h in enumerate(proof.hyps)}

    def walk(p: Proof) -> str:
        if p.rule == AXIOM:
            return names[p.hyps[0].id]
        if p.rule == UNDER_E:
            return f"({walk(p.premises[1])} {walk(p.premises[0])})"
        if p.rule == OVER_E:
            return f"({walk(p.premises[0])} {walk(p.premises[1])})"
        names[p.binder.id] = f"k{next(counter)}"
        return f"(\\{names[p.binder.id]}.{walk(p.premises[0])})"

    return walk(proof)


def prove(antecedent: list[Category] | tuple[Category, ...], goal: Category,
          options: ProveOptions | None = None) -> list[Proof]:
    """All non-equivalent derivations of the sequent, stably ordered."""
    options = options or ProveOptions()
    hyps = tuple(Hyp(i, c) for i, c in enumerate(antecedent))
    search = _Search(options, first_fresh_id=len(hyps))
    proofs = search.prove(hyps, goal)
    return sorted(proofs, key=proof_key)


def extract_term(proof: Proof, bases: SortMap = DEFAULT_SORT_MAP) -> Term:
    """Curry-Howard image of a proof.

    Word hypotheses become free variables h0..h{n-1} in antecedent
    order; discharged hypotheses bind k0, k1, ... in walk order.  Under
    elimination applies the right premise to the left one, over
    elimination the left premise to the right one.
    """
    names: dict[int, str] = {h.id: f"h{pos}" for pos, h in enumerate(proof.hyps)}
    counter = itertools.count()

    def walk(p: Proof) -> Term:
        if p.rule == AXIOM:
            hyp = p.hyps[0]
            return Var(names[hyp.id], sem_type(hyp.category, bases))
        if p.rule == UNDER_E:
            arg, fn = p.premises
            return App(walk(fn), walk(arg))
        if p.rule == OVER_E:
            fn, arg = p.premises
            return App(walk(fn), walk(arg))
        hyp = p.binder
        names[hyp.id] = f"k{next(counter)}"
        return Abs(names[hyp.id], sem_type(hyp.category, bases),
                   walk(p.premises[0]))

    return walk(proof)


def proof_to_text(proof: Proof, indent: str = "  ") -> str:
    lines: list[str] = []

    def walk(p: Proof, depth: int) -> None:
        lines.append(f"{indent * depth}{p.rule}: {p.sequent}")
        for q in p.premises:
            walk(q, depth + 1)

    walk(proof, 0)
    return "\n".join(lines)


@dataclass(frozen=True)
class Parse:
    """One derivation of a sentence under one choice of word senses."""
    words: tuple[str, ...]
    sense_indices: tuple[int, ...]
    categories: tuple[Category, ...]
    proof: Proof
    term: Term


def enumerate_parses(lexicon, words: list[str] | tuple[str, ...],
                     goal: Category | str = "S",
                     options: ProveOptions | None = None) -> list[Parse]:
    """All parses of the word sequence: every sense assignment crossed
    with every derivation of the resulting category sequence."""
    options = options or ProveOptions()
    goal_cat = parse_category(goal, lexicon.bases) if isinstance(goal, str) else goal
    entries = []
    for w in words:
        e = lexicon.entry(w)
        if e is None:
            raise UnknownWord(w)
        entries.append(e)
    out: list[Parse] = []
    seen: set[str] = set()
    for combo in itertools.product(*[range(len(e.senses)) for e in entries]):
        cats = tuple(entries[i].senses[s].category for i, s in enumerate(combo))
        for proof in prove(cats, goal_cat, options):
            term = extract_term(proof, lexicon.bases)
            # Assignments can collide on the same derivational term;
            # the first one in sense order wins.
            key = canonical_key(normalize(term, BETA_ETA_LONG))
            if key in seen:
                continue
            seen.add(key)
            out.append(Parse(tuple(words), combo, cats, proof, term))
    return out
