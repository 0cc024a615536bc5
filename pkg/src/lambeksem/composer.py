"""Meaning assembly: lexical substitution, sort-mismatch repair, readings.

The derivational term coming out of a proof is typed over plain e and t,
while lexical terms carry refined sorts.  Because derivational terms are
linear, every derivational binder is constrained by exactly one
application site, so those binders can be treated as type holes and
filled by unification.  After substitution and hole resolution the term
is fully sorted except at application sites where two ground sorts
genuinely clash; those become mismatch sites, to be repaired by wrapping
the argument in a coercion constant.  Repairs respect rigidity: using a
rigid coercion of a word blocks every other coercion that word provides.

Mismatch sites are located on the unreduced substituted term, before
beta reduction; readings are the beta-normal forms of the repaired
terms, deduplicated by alpha-equality of their eta-long forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .categories import Category, parse_category, sem_type
from .lexicon import Coercion, Lexicon, phrase_coercions
from .prover import Parse, ProveOptions, enumerate_parses
from .terms import (Abs, App, Arrow, BETA, BETA_ETA_LONG, Const, E, PolyInst,
                    SemType, SortAtom, T, Term, TypeVar, Var, canonical_key,
                    canonicalize, free_vars, normalize, subst_type, type_of,
                    type_vars)


class CompositionError(Exception):
    pass


class MissingSense(CompositionError):
    pass


class CoercionDepthExceeded(CompositionError):
    pass


@dataclass(frozen=True)
class MismatchSite:
    """An application whose argument sort clashes with the parameter sort.

    `location` is the path of fn/arg/body steps from the root to the
    argument subterm.  `candidates` holds the coercion chains (most
    often single steps) that can bridge found -> expected; a site with a
    non-atomic clash is fatal and has no candidates.
    """
    location: tuple[str, ...]
    expected: SemType
    found: SemType
    candidates: tuple[tuple[Coercion, ...], ...] = ()
    fatal: bool = False


@dataclass(frozen=True)
class Provenance:
    parse: Parse
    choices: tuple[tuple[MismatchSite, tuple[Coercion, ...]], ...] = ()


@dataclass(frozen=True)
class Reading:
    """One meaning of a sentence: a closed beta-normal term of type t.

    Alpha-equal readings arising from different parses or coercion
    choices are collapsed; every contributing provenance is kept."""
    formula_term: Term
    provenances: tuple[Provenance, ...]

    @property
    def parse(self) -> Parse:
        return self.provenances[0].parse

    @property
    def coercion_choices(self) -> tuple[tuple[MismatchSite, tuple[Coercion, ...]], ...]:
        return self.provenances[0].choices

    def coercions_used(self) -> tuple[Coercion, ...]:
        out: list[Coercion] = []
        for _, chain in self.coercion_choices:
            out.extend(chain)
        return tuple(out)


@dataclass(frozen=True)
class ComposeOptions:
    coercions_enabled: bool = True
    max_coercion_depth: int = 1
    lambek_restriction: bool = True
    budget: int = 10 ** 6
    max_readings: int | None = None

    def prove_options(self) -> ProveOptions:
        return ProveOptions(lambek_restriction=self.lambek_restriction,
                            budget=self.budget)


NO_PARSE = "NO_PARSE"
PARSE_BUT_NO_SORTING = "PARSE_BUT_NO_SORTING"
OK = "OK"


@dataclass(frozen=True)
class SentenceAnalysis:
    words: tuple[str, ...]
    outcome: str
    readings: tuple[Reading, ...]
    parse_count: int


# ---------------------------------------------------------------------------
# hole resolution

class _Holes:
    def __init__(self) -> None:
        self.counter = itertools.count()
        self.binding: dict[str, SemType] = {}

    def fresh(self) -> TypeVar:
        return TypeVar(f"_h{next(self.counter)}")

    def resolve(self, ty: SemType) -> SemType:
        if isinstance(ty, TypeVar) and ty.name in self.binding:
            return self.resolve(self.binding[ty.name])
        if isinstance(ty, Arrow):
            return Arrow(self.resolve(ty.domain), self.resolve(ty.codomain))
        return ty

    def bind(self, var: TypeVar, ty: SemType) -> None:
        if isinstance(ty, TypeVar) and ty.name == var.name:
            return
        if var.name in type_vars(ty):
            raise CompositionError(f"circular instantiation of {var.name}")
        self.binding[var.name] = ty

    def unify_tolerant(self, a: SemType, b: SemType) -> None:
        """Bind holes; let ground sort clashes stand (they become
        mismatch sites later); reject structural clashes outright."""
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TypeVar):
            self.bind(a, b)
            return
        if isinstance(b, TypeVar):
            self.bind(b, a)
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify_tolerant(a.domain, b.domain)
            self.unify_tolerant(a.codomain, b.codomain)
            return
        if isinstance(a, SortAtom) and isinstance(b, SortAtom):
            return
        raise CompositionError(f"cannot compose {a} with {b}")


def _holeify(term: Term, holes: _Holes) -> Term:
    """Replace every e inside a derivational binder annotation with a
    fresh hole, consistently on the binder and its occurrences."""

    def open_type(ty: SemType) -> SemType:
        if ty == E:
            return holes.fresh()
        if isinstance(ty, Arrow):
            return Arrow(open_type(ty.domain), open_type(ty.codomain))
        return ty

    def walk(t: Term, env: dict[str, SemType]) -> Term:
        if isinstance(t, Var):
            return Var(t.name, env.get(t.name, t.type))
        if isinstance(t, Abs):
            opened = open_type(t.var_type)
            return Abs(t.var, opened, walk(t.body, {**env, t.var: opened}))
        if isinstance(t, App):
            return App(walk(t.fn, env), walk(t.arg, env))
        return t

    return walk(term, {})


def _freshen_insts(term: Term, holes: _Holes) -> Term:
    if isinstance(term, PolyInst):
        return term.with_inst({name: holes.fresh() for name, _ in term.inst})
    if isinstance(term, App):
        return App(_freshen_insts(term.fn, holes), _freshen_insts(term.arg, holes))
    if isinstance(term, Abs):
        return Abs(term.var, term.var_type, _freshen_insts(term.body, holes))
    return term


def _raw_substitute(term: Term, mapping: dict[str, Term]) -> Term:
    # Replacements are closed, so capture cannot happen.
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if isinstance(term, App):
        return App(_raw_substitute(term.fn, mapping),
                   _raw_substitute(term.arg, mapping))
    if isinstance(term, Abs):
        inner = {k: v for k, v in mapping.items() if k != term.var}
        return Abs(term.var, term.var_type, _raw_substitute(term.body, inner))
    return term


def _resolve_pass(term: Term, holes: _Holes) -> SemType:
    if isinstance(term, (Var, Const)):
        return term.type
    if isinstance(term, PolyInst):
        return subst_type(term.schema, term.inst_map)
    if isinstance(term, Abs):
        return Arrow(term.var_type, _resolve_pass(term.body, holes))
    if isinstance(term, App):
        fn_ty = holes.resolve(_resolve_pass(term.fn, holes))
        arg_ty = _resolve_pass(term.arg, holes)
        if isinstance(fn_ty, TypeVar):
            result = holes.fresh()
            holes.bind(fn_ty, Arrow(arg_ty, result))
            return result
        if not isinstance(fn_ty, Arrow):
            raise CompositionError(f"application of non-function type {fn_ty}")
        holes.unify_tolerant(fn_ty.domain, arg_ty)
        return fn_ty.codomain
    raise CompositionError(f"unexpected node {term!r}")


def _ground(term: Term, holes: _Holes) -> Term:
    def ground_type(ty: SemType) -> SemType:
        ty = holes.resolve(ty)
        leftover = type_vars(ty)
        if leftover:
            ty = subst_type(ty, {v: E for v in leftover})
        return ty

    def walk(t: Term) -> Term:
        if isinstance(t, Var):
            return Var(t.name, ground_type(t.type))
        if isinstance(t, Const):
            return Const(t.name, ground_type(t.type))
        if isinstance(t, PolyInst):
            return t.with_inst({n: ground_type(v) for n, v in t.inst})
        if isinstance(t, Abs):
            return Abs(t.var, ground_type(t.var_type), walk(t.body))
        return App(walk(t.fn), walk(t.arg))

    return walk(term)


def _instantiate_types(term: Term, mapping: dict[str, SemType]) -> Term:
    if isinstance(term, Var):
        return Var(term.name, subst_type(term.type, mapping))
    if isinstance(term, Const):
        return Const(term.name, subst_type(term.type, mapping))
    if isinstance(term, PolyInst):
        return term.with_inst({n: subst_type(v, mapping) for n, v in term.inst})
    if isinstance(term, Abs):
        return Abs(term.var, subst_type(term.var_type, mapping),
                   _instantiate_types(term.body, mapping))
    return App(_instantiate_types(term.fn, mapping),
               _instantiate_types(term.arg, mapping))


def _unfold_definitions(term: Term, lexicon: Lexicon) -> Term:
    if isinstance(term, PolyInst):
        poly = lexicon.poly(term.name)
        if poly is not None and poly.definition is not None:
            body = _instantiate_types(poly.definition, term.inst_map)
            return _unfold_definitions(body, lexicon)
        return term
    if isinstance(term, App):
        return App(_unfold_definitions(term.fn, lexicon),
                   _unfold_definitions(term.arg, lexicon))
    if isinstance(term, Abs):
        return Abs(term.var, term.var_type,
                   _unfold_definitions(term.body, lexicon))
    return term


def substitute_lexical(parse: Parse, lexicon: Lexicon) -> Term:
    """Plug each word's lexical term into the derivational term.

    The result is fully sorted (derivational binder holes filled by
    unification, polymorphic constants instantiated, definitions
    unfolded) but possibly ill-typed at sort-clashing application
    sites, and still unreduced.
    """
    holes = _Holes()
    mapping: dict[str, Term] = {}
    for pos, word in enumerate(parse.words):
        entry = lexicon.entry(word)
        if entry is None:
            raise MissingSense(f"no entry for {word}")
        idx = parse.sense_indices[pos]
        if idx >= len(entry.senses):
            raise MissingSense(f"{word} has no sense #{idx}")
        mapping[f"h{pos}"] = _freshen_insts(entry.senses[idx].term, holes)

    opened = _holeify(parse.term, holes)
    substituted = _raw_substitute(opened, mapping)
    _resolve_pass(substituted, holes)
    grounded = _ground(substituted, holes)
    return _unfold_definitions(grounded, lexicon)


# ---------------------------------------------------------------------------
# mismatch detection and repair

def _coercion_chains(found: SortAtom, expected: SortAtom,
                     available: tuple[Coercion, ...],
                     max_depth: int) -> tuple[tuple[Coercion, ...], ...]:
    """Chains c1;..;ck with k <= max_depth stepping found -> expected."""
    chains: list[tuple[Coercion, ...]] = []

    def extend(at: SortAtom, chain: tuple[Coercion, ...]) -> None:
        if len(chain) >= max_depth:
            return
        for c in available:
            if c.source == at and c not in chain:
                if c.target == expected:
                    chains.append(chain + (c,))
                else:
                    extend(c.target, chain + (c,))

    extend(found, ())
    return tuple(chains)


def find_mismatches(term: Term, available: tuple[Coercion, ...] = (),
                    max_depth: int = 1) -> list[MismatchSite]:
    """All application sites whose argument type differs from the
    parameter type, in walk order.  Atomic clashes carry their repair
    candidates; anything else is fatal."""
    sites: list[MismatchSite] = []

    def walk(t: Term, env: dict[str, SemType],
             path: tuple[str, ...]) -> SemType:
        if isinstance(t, Var):
            return env.get(t.name, t.type)
        if isinstance(t, Const):
            return t.type
        if isinstance(t, PolyInst):
            return subst_type(t.schema, t.inst_map)
        if isinstance(t, Abs):
            body = walk(t.body, {**env, t.var: t.var_type}, path + ("body",))
            return Arrow(t.var_type, body)
        fn_ty = walk(t.fn, env, path + ("fn",))
        arg_ty = walk(t.arg, env, path + ("arg",))
        if not isinstance(fn_ty, Arrow):
            raise CompositionError(f"application of non-function type {fn_ty}")
        if fn_ty.domain != arg_ty:
            if isinstance(fn_ty.domain, SortAtom) and isinstance(arg_ty, SortAtom):
                sites.append(MismatchSite(
                    path + ("arg",), fn_ty.domain, arg_ty,
                    _coercion_chains(arg_ty, fn_ty.domain, available, max_depth)))
            else:
                sites.append(MismatchSite(path + ("arg",), fn_ty.domain,
                                          arg_ty, (), fatal=True))
        return fn_ty.codomain

    walk(term, {}, ())
    return sites


def _wrap(term: Term, location: tuple[str, ...],
          chain: tuple[Coercion, ...]) -> Term:
    if not location:
        out = term
        for c in chain:
            out = App(c.constant(), out)
        return out
    step, rest = location[0], location[1:]
    if step == "fn":
        return App(_wrap(term.fn, rest, chain), term.arg)
    if step == "arg":
        return App(term.fn, _wrap(term.arg, rest, chain))
    return Abs(term.var, term.var_type, _wrap(term.body, rest, chain))


def _rigidity_ok(chains: tuple[tuple[Coercion, ...], ...]) -> bool:
    used: dict[str, set[str]] = {}
    rigid: dict[str, set[str]] = {}
    for chain in chains:
        for c in chain:
            used.setdefault(c.owner, set()).add(c.name)
            if c.rigid:
                rigid.setdefault(c.owner, set()).add(c.name)
    for owner, names in rigid.items():
        if names and len(used[owner]) > 1:
            return False
    return True


def resolve_coercions(term: Term, available: tuple[Coercion, ...],
                      options: ComposeOptions | None = None
                      ) -> list[tuple[Term, tuple[tuple[MismatchSite, tuple[Coercion, ...]], ...]]]:
    """Every way of repairing the term's mismatch sites, one coercion
    chain per site, subject to the rigidity blocking rule."""
    options = options or ComposeOptions()
    depth = max(1, options.max_coercion_depth)
    sites = find_mismatches(term, available, depth)
    if any(s.fatal for s in sites):
        return []
    for s in sites:
        if not s.candidates:
            # Distinguish a genuinely unsolvable site from one whose
            # repair exists but only beyond the configured chain depth.
            if depth >= 2 and _coercion_chains(s.found, s.expected, available,
                                               len(available)):
                raise CoercionDepthExceeded(
                    f"repair of {s.found} -> {s.expected} needs a chain "
                    f"longer than {depth}")
            return []
    out = []
    for combo in itertools.product(*[s.candidates for s in sites]):
        if not _rigidity_ok(combo):
            continue
        repaired = term
        for site, chain in zip(sites, combo):
            repaired = _wrap(repaired, site.location, chain)
        out.append((repaired, tuple(zip(sites, combo))))
    return out


# ---------------------------------------------------------------------------
# full pipeline

def compute_readings(words: list[str] | tuple[str, ...], lexicon: Lexicon,
                     goal: Category | str = "S",
                     options: ComposeOptions | None = None) -> list[Reading]:
    return list(analyze(words, lexicon, goal, options).readings)


def analyze(words: list[str] | tuple[str, ...], lexicon: Lexicon,
            goal: Category | str = "S",
            options: ComposeOptions | None = None) -> SentenceAnalysis:
    """Run the whole pipeline on one sentence and classify the outcome."""
    options = options or ComposeOptions()
    goal_cat = parse_category(goal, lexicon.bases) if isinstance(goal, str) else goal
    if sem_type(goal_cat, lexicon.bases) != T:
        raise CompositionError("goal category must denote a proposition")
    parses = enumerate_parses(lexicon, words, goal_cat, options.prove_options())
    available = phrase_coercions(lexicon, words) if options.coercions_enabled else ()

    grouped: dict[str, tuple[Term, list[Provenance]]] = {}
    for parse in parses:
        substituted = substitute_lexical(parse, lexicon)
        for repaired, choices in resolve_coercions(substituted, available, options):
            formula_term = normalize(repaired, BETA)
            if free_vars(formula_term):
                raise CompositionError("reading is not closed")
            if type_of(formula_term, {}) != T:
                raise CompositionError("reading is not of type t")
            key = canonical_key(canonicalize(normalize(formula_term, BETA_ETA_LONG)))
            if key not in grouped:
                grouped[key] = (formula_term, [])
            grouped[key][1].append(Provenance(parse, choices))

    readings = [Reading(term, tuple(provs))
                for _, (term, provs) in sorted(grouped.items())]
    if options.max_readings is not None:
        readings = readings[:options.max_readings]

    if readings:
        outcome = OK
    elif parses:
        outcome = PARSE_BUT_NO_SORTING
    else:
        outcome = NO_PARSE
    return SentenceAnalysis(tuple(words), outcome, tuple(readings), len(parses))
