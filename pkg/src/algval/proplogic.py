"""Propositional many-valued validity over a finite algebra.

A propositional formula is a tree over variables and the shared connective
nodes; a valuation maps every variable to an element and evaluation is the
homomorphic extension through the algebra tables.  Validity quantifies the
valuation over the whole carrier, exhaustively, so the variable count is
capped by a valuation budget.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .algebra import Algebra, ps3
from .errors import CapabilityError, InputError, ResourceError
from .formulas import And, Bot, Imp, Not, Or, Top, _tokenize
from .theorems import CheckResult, _timed, profile

MAX_VALUATIONS = 100_000


@dataclass(frozen=True)
class PVar:
    name: str


PropFormula = Union[PVar, And, Or, Imp, Not, Top, Bot]


def prop_vars(f: PropFormula) -> frozenset[str]:
    if isinstance(f, PVar):
        return frozenset({f.name})
    if isinstance(f, (And, Or, Imp)):
        return prop_vars(f.left) | prop_vars(f.right)
    if isinstance(f, Not):
        return prop_vars(f.body)
    return frozenset()


def print_prop(f: PropFormula) -> str:
    if isinstance(f, PVar):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Not):
        return "~" + _wrap(f.body)
    if isinstance(f, And):
        return f"{_wrap(f.left)} /\\ {_wrap(f.right)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left)} \\/ {_wrap(f.right)}"
    if isinstance(f, Imp):
        return f"{_wrap(f.left)} -> {_wrap(f.right)}"
    raise InputError(f"cannot print {f!r}")


def _wrap(f: PropFormula) -> str:
    if isinstance(f, (PVar, Top, Bot, Not)):
        return print_prop(f)
    return f"({print_prop(f)})"


class _PropParser:
    """Same connective grammar as the sentence language; atoms are bare names."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None:
            raise InputError("unexpected end of formula")
        if expected is not None and tok != expected:
            raise InputError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def formula(self):
        left = self.implication()
        while self.peek() == "<->":
            self.take()
            right = self.implication()
            left = And(Imp(left, right), Imp(right, left))
        return left

    def implication(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "\\/":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek() == "/\\":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok == "true":
            self.take()
            return Top()
        if tok == "false":
            self.take()
            return Bot()
        tok = self.take()
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok) and tok not in (
                "forall", "exists", "in"):
            return PVar(tok)
        raise InputError(f"expected a propositional variable, found {tok!r}")


def parse_prop(text: str) -> PropFormula:
    parser = _PropParser(_tokenize(text))
    f = parser.formula()
    if parser.peek() is not None:
        raise InputError(f"trailing tokens after formula: {parser.peek()!r}")
    return f


def eval_prop(alg: Algebra, valuation: Mapping[str, str], f: PropFormula) -> str:
    """Homomorphic evaluation of a propositional formula."""
    return alg.elements[_eval_i(alg, {k: alg.index[alg.resolve(v)]
                                      for k, v in valuation.items()}, f)]


def _eval_i(alg: Algebra, valuation: Mapping[str, int], f: PropFormula) -> int:
    if isinstance(f, PVar):
        try:
            return valuation[f.name]
        except KeyError:
            raise InputError(f"no value assigned to variable {f.name!r}")
    if isinstance(f, Top):
        return alg.top_i
    if isinstance(f, Bot):
        return alg.bottom_i
    if isinstance(f, And):
        return alg.meet_t[_eval_i(alg, valuation, f.left)][_eval_i(alg, valuation, f.right)]
    if isinstance(f, Or):
        return alg.join_t[_eval_i(alg, valuation, f.left)][_eval_i(alg, valuation, f.right)]
    if isinstance(f, Imp):
        return alg.imp_t[_eval_i(alg, valuation, f.left)][_eval_i(alg, valuation, f.right)]
    if isinstance(f, Not):
        if alg.star_t is None:
            raise CapabilityError(f"negation needs a star table; {alg.name} has none")
        return alg.star_t[_eval_i(alg, valuation, f.body)]
    raise InputError(f"cannot evaluate {f!r}")


def is_tautology(alg: Algebra, designated: Iterable[str], f: PropFormula,
                 max_valuations: int = MAX_VALUATIONS
                 ) -> tuple[bool, Optional[dict[str, str]]]:
    """Exhaustive validity over all valuations.

    Returns (True, None) when every valuation lands in the designated set,
    else (False, falsifying valuation).
    """
    d = frozenset(alg.index[alg.resolve(x)] for x in designated)
    variables = sorted(prop_vars(f))
    total = len(alg.elements) ** len(variables)
    if total > max_valuations:
        raise ResourceError(
            f"{len(variables)} variables over {len(alg.elements)} elements "
            f"need {total} valuations; cap is {max_valuations}")
    for combo in itertools.product(range(len(alg.elements)), repeat=len(variables)):
        valuation = dict(zip(variables, combo))
        if _eval_i(alg, valuation, f) not in d:
            return False, {v: alg.elements[i] for v, i in valuation.items()}
    return True, None


EXPLOSION = Imp(And(PVar("p"), Not(PVar("p"))), PVar("q"))


@_timed
def check_paraconsistent(alg: Algebra, designated: Iterable[str],
                         rank_bound: int = 2, seed: int = 0,
                         budget: int = 0) -> CheckResult:
    """Search for a valuation that defeats explosion.

    On a designated cobounded algebra with a second designated element the
    witness valuation (that element for p, bottom for q) must defeat it; on
    a classical two-valued setup no valuation can.
    """
    name = "prop-paraconsistency"
    desc = "explosion (p /\\ ~p) -> q fails for some valuation"
    prof = profile(alg, designated)
    if alg.star_t is None:
        return CheckResult(name, desc, "skipped",
                           skip_reason="no star table for negation")
    ok, falsifier = is_tautology(alg, designated, EXPLOSION)
    details: dict = {"witness": falsifier}
    expected_witness = prof["designated_cobounded"] and prof["big_designated"]
    if expected_witness and ok:
        ce = {"kind": "missing-witness",
              "note": "no falsifying valuation found although one is guaranteed"}
        return CheckResult(name, desc, "fail", counterexample=ce, details=details)
    if expected_witness:
        d = frozenset(alg.resolve(x) for x in designated)
        mid = sorted(d - {alg.top})[0]
        guaranteed = {"p": mid, "q": alg.bottom}
        val = eval_prop(alg, guaranteed, EXPLOSION)
        if alg.resolve(val) in d:
            ce = {"kind": "guaranteed-witness-broken", "valuation": guaranteed,
                  "value": val}
            return CheckResult(name, desc, "fail", counterexample=ce, details=details)
        details["guaranteed_witness"] = guaranteed
    details["explosion_valid"] = ok
    return CheckResult(name, desc, "pass", details=details)


def random_prop_corpus(count: int, seed: int, max_vars: int = 3,
                       max_depth: int = 4) -> list[PropFormula]:
    """Seeded corpus of random propositional formulas."""
    rng = random.Random(seed)
    variables = [f"p{i}" for i in range(max_vars)]

    def gen(depth: int) -> PropFormula:
        if depth == 0 or rng.random() < 0.25:
            r = rng.random()
            if r < 0.85:
                return PVar(rng.choice(variables))
            return Top() if r < 0.925 else Bot()
        kind = rng.choice(("and", "or", "imp", "not"))
        if kind == "not":
            return Not(gen(depth - 1))
        ctor = {"and": And, "or": Or, "imp": Imp}[kind]
        return ctor(gen(depth - 1), gen(depth - 1))

    return [gen(max_depth) for _ in range(count)]


@_timed
def check_ps3_agreement(alg: Algebra, designated: Iterable[str],
                        corpus: Optional[list[PropFormula]] = None,
                        corpus_size: int = 500, seed: int = 0,
                        rank_bound: int = 2, budget: int = 0) -> CheckResult:
    """Propositional validity agrees with the three-valued core.

    Soundness side: every formula valid here is valid there, via the
    collapse of valuations.  Completeness side: each falsifying valuation
    of the core pulls back through the section top->top, half->(a fixed
    intermediate), bottom->bottom and still falsifies here.
    """
    name = "prop-agreement"
    desc = "validity agrees with the three-valued core on a random corpus"
    prof = profile(alg, designated)
    if not prof["ultra_designated_cobounded"]:
        return CheckResult(name, desc, "skipped",
                           skip_reason="needs an ultra-designated cobounded algebra")
    if not prof["has_intermediate"]:
        return CheckResult(name, desc, "skipped",
                           skip_reason="needs more than two elements")
    if corpus is None:
        corpus = random_prop_corpus(corpus_size, seed)
    core, core_d = ps3()
    mid = alg.intermediates()[0]
    section = {"1": alg.top, "half": mid, "0": alg.bottom}
    agreements = 0
    for f in corpus:
        here, _ = is_tautology(alg, designated, f)
        there, falsifier = is_tautology(core, core_d, f)
        if here != there:
            ce = {"kind": "validity-disagreement", "formula": print_prop(f),
                  "alg": here, "core": there}
            return CheckResult(name, desc, "fail", counterexample=ce)
        if falsifier is not None:
            pulled = {v: section[e] for v, e in falsifier.items()}
            val = eval_prop(alg, pulled, f)
            if alg.resolve(val) in frozenset(alg.resolve(x) for x in designated):
                ce = {"kind": "pullback-not-falsifying", "formula": print_prop(f),
                      "core_valuation": falsifier, "pulled": pulled, "value": val}
                return CheckResult(name, desc, "fail", counterexample=ce)
        agreements += 1
    return CheckResult(name, desc, "pass",
                       details={"corpus": len(corpus), "agreements": agreements})
