"""Truth-value assignment over a bounded universe of names.

Two assignment styles share one membership clause and differ on equality:

  membership(u, v) = join over x in dom(v) of  v(x) /\\ equality(x, u)

  equality under "ba" (the boolean-style reading):
      meet over x in dom(u) of (u(x) => membership(x, v))
      /\\ meet over y in dom(v) of (v(y) => membership(y, u))

  equality under "pa" (the paraconsistent reading) adds the contrapositive
  conjunct (membership(x, v)* => u(x)*) to every factor, and symmetrically
  for dom(v).

The two clauses are mutually recursive; termination is by descent on the
sum of the argument ranks, since every recursive call replaces one argument
by a member of the other's domain.  Atomic values are memoized per context,
so "ba" and "pa" caches can never alias.  The memo is grow-only and every
entry is deterministic, which makes a context safe to share across worker
threads; quantifiers always sweep the universe contents at call time, and
atomic values never depend on what else has been interned.

Connectives evaluate homomorphically: /\\, \\/ and -> through the algebra
tables, ~ through star, and the quantifiers as big meet/join over every
name in the (bounded) universe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .algebra import Algebra
from .errors import CapabilityError, InputError
from .formulas import (
    And, Bot, Const, Eq, Exists, Forall, Formula, Imp, Mem, Not, Or, Term,
    Top, Var, instantiate_axiom, print_formula, subst_const,
)
from .universe import Universe

ASSIGNMENTS = ("ba", "pa")

_REL_EQ, _REL_MEM = 0, 1


class EvalContext:
    """A universe, a designated set and one assignment style."""

    def __init__(self, universe: Universe, designated: Iterable[str],
                 assignment: str = "pa"):
        if assignment not in ASSIGNMENTS:
            raise InputError(f"unknown assignment {assignment!r}; use 'ba' or 'pa'")
        self.universe = universe
        self.algebra: Algebra = universe.algebra
        alg = self.algebra
        self.assignment = assignment
        self.designated = frozenset(alg.resolve(d) for d in designated)
        self.designated_i = frozenset(alg.index[d] for d in self.designated)
        self._memo: dict[tuple[int, int, int], int] = {}
        self._meet = alg.meet_t
        self._join = alg.join_t
        self._imp = alg.imp_t
        self._star = alg.star_t
        self._top = alg.top_i
        self._bottom = alg.bottom_i

    # -- atomic clauses ---------------------------------------------------------

    def equality(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u  # the clause is symmetric
        key = (_REL_EQ, u, v)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        names = self.universe.names
        meet, imp = self._meet, self._imp
        pa = self.assignment == "pa"
        star = self._star
        if pa and star is None:
            raise CapabilityError(
                f"the pa assignment needs a star table; {self.algebra.name} has none"
            )
        acc = self._top
        for hi, lo in ((u, v), (v, u)):
            for x, ux in names[hi].entries:
                if __debug__:
                    assert names[x].rank < names[hi].rank
                m = self.membership(x, lo)
                c = imp[ux][m]
                if pa:
                    c = meet[c][imp[star[m]][star[ux]]]
                acc = meet[acc][c]
            if acc == self._bottom:
                break
        self._memo[key] = acc
        return acc

    def membership(self, u: int, v: int) -> int:
        key = (_REL_MEM, u, v)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        names = self.universe.names
        meet, join = self._meet, self._join
        acc = self._bottom
        for x, vx in names[v].entries:
            acc = join[acc][meet[vx][self.equality(x, u)]]
            if acc == self._top:
                break
        self._memo[key] = acc
        return acc

    def atomic(self, rel: str, u: int, v: int) -> str:
        """String-level access to one atomic value; rel is '=' or 'in'."""
        if rel == "=":
            return self.algebra.elements[self.equality(u, v)]
        if rel == "in":
            return self.algebra.elements[self.membership(u, v)]
        raise InputError(f"unknown atomic relation {rel!r}")

    # -- formula evaluation -------------------------------------------------------

    def _term(self, t: Term, env: dict[str, int]) -> int:
        if isinstance(t, Const):
            if not 0 <= t.name_id < len(self.universe.names):
                raise InputError(f"unknown name constant #{t.name_id}")
            return t.name_id
        try:
            return env[t.name]
        except KeyError:
            raise InputError(f"unbound variable {t.name!r}")

    def value(self, f: Formula, env: Optional[dict[str, int]] = None) -> int:
        """Evaluate to an element index; free variables must be bound in env."""
        if env is None:
            env = {}
        return self._value(f, env)

    def _value(self, f: Formula, env: dict[str, int]) -> int:
        if isinstance(f, Mem):
            return self.membership(self._term(f.left, env), self._term(f.right, env))
        if isinstance(f, Eq):
            return self.equality(self._term(f.left, env), self._term(f.right, env))
        if isinstance(f, And):
            return self._meet[self._value(f.left, env)][self._value(f.right, env)]
        if isinstance(f, Or):
            return self._join[self._value(f.left, env)][self._value(f.right, env)]
        if isinstance(f, Imp):
            return self._imp[self._value(f.left, env)][self._value(f.right, env)]
        if isinstance(f, Not):
            if self._star is None:
                raise CapabilityError(
                    f"negation needs a star table; {self.algebra.name} has none"
                )
            return self._star[self._value(f.body, env)]
        if isinstance(f, Top):
            return self._top
        if isinstance(f, Bot):
            return self._bottom
        if isinstance(f, Forall):
            saved = env.get(f.var)
            acc = self._top
            meet = self._meet
            for nid in range(len(self.universe.names)):
                env[f.var] = nid
                acc = meet[acc][self._value(f.body, env)]
                if acc == self._bottom:
                    break
            self._restore(env, f.var, saved)
            return acc
        if isinstance(f, Exists):
            saved = env.get(f.var)
            acc = self._bottom
            join = self._join
            for nid in range(len(self.universe.names)):
                env[f.var] = nid
                acc = join[acc][self._value(f.body, env)]
                if acc == self._top:
                    break
            self._restore(env, f.var, saved)
            return acc
        raise InputError(f"cannot evaluate {f!r}")

    @staticmethod
    def _restore(env: dict[str, int], var: str, saved: Optional[int]):
        if saved is None:
            env.pop(var, None)
        else:
            env[var] = saved

    def eval(self, f: Formula, env: Optional[dict[str, int]] = None) -> str:
        """Evaluate to an element identifier."""
        return self.algebra.elements[self.value(f, env)]

    def holds(self, f: Formula, env: Optional[dict[str, int]] = None) -> bool:
        """Validity: the value lands in the designated set."""
        return self.value(f, env) in self.designated_i

    def is_designated(self, value_index: int) -> bool:
        return value_index in self.designated_i


def is_valid(ctx: EvalContext, sentence: Formula) -> bool:
    """Validity of a closed sentence."""
    return ctx.holds(sentence)


# -- bounded quantification ------------------------------------------------------


@dataclass
class BqResult:
    quantified: str
    domain_indexed: str
    equal: bool


def check_bq(ctx: EvalContext, u: int, phi: Formula, var: str = "x") -> BqResult:
    """Compare the quantified bounded formula against its domain-indexed form.

    Left side:  value of `forall var (var in u -> phi(var))` over the whole
    universe.  Right side: meet over x in dom(u) of u(x) => phi(x).
    """
    quantified = ctx.value(Forall(var, Imp(Mem(Var(var), Const(u)), phi)))
    acc = ctx._top
    for x, ux in ctx.universe.names[u].entries:
        acc = ctx._meet[acc][ctx._imp[ux][ctx.value(subst_const(phi, var, x))]]
    es = ctx.algebra.elements
    return BqResult(es[quantified], es[acc], quantified == acc)


# -- formula batteries --------------------------------------------------------------


def battery(universe: Universe, t_ids: Optional[Iterable[int]] = None,
            var: str = "x") -> list[tuple[str, Formula]]:
    """The fixed one-free-variable formula battery used by the property sweeps.

    Contains, for each t in a small name sample: x = t, t in x, x in t,
    ~(x in t) and (x in t) -> false; plus the t-independent members
    exists m (m in x), forall m (m in x -> m = m), one nested-quantifier
    formula and ~exists m (m in x).  Binder names steer clear of the axiom
    schemas' slot variables so battery members can fill parameter slots.
    """
    if t_ids is None:
        t_ids = range(min(4, len(universe.names)))
    x = Var(var)
    m, n = Var("m"), Var("n")
    forms: list[tuple[str, Formula]] = []
    for t in t_ids:
        c = Const(t)
        forms.append((f"{var} = #{t}", Eq(x, c)))
        forms.append((f"#{t} in {var}", Mem(c, x)))
        forms.append((f"{var} in #{t}", Mem(x, c)))
        forms.append((f"~({var} in #{t})", Not(Mem(x, c))))
        forms.append((f"({var} in #{t}) -> false", Imp(Mem(x, c), Bot())))
    forms.append((f"exists m (m in {var})", Exists("m", Mem(m, x))))
    forms.append((f"forall m (m in {var} -> m = m)",
                  Forall("m", Imp(Mem(m, x), Eq(m, m)))))
    forms.append((f"exists m forall n (n in m -> n in {var})",
                  Exists("m", Forall("n", Imp(Mem(n, m), Mem(n, x))))))
    forms.append((f"~exists m (m in {var})", Not(Exists("m", Mem(m, x)))))
    return forms


def two_var_battery() -> list[tuple[str, Formula]]:
    """Two-free-variable formulas (in y and z) for the collection sweeps."""
    y, z = Var("y"), Var("z")
    return [
        ("y in z", Mem(y, z)),
        ("y = z", Eq(y, z)),
        ("z in y", Mem(z, y)),
        ("(y in z) -> false", Imp(Mem(y, z), Bot())),
    ]


def nff_battery(universe: Universe, sample: Optional[Iterable[int]] = None,
                rng: Optional[random.Random] = None) -> list[tuple[str, Formula]]:
    """Closed negation-free sentences, with name constants from the sample."""
    if sample is None:
        sample = list(range(min(4, len(universe.names))))
    sample = list(sample)
    out: list[tuple[str, Formula]] = []
    e = sample[0]
    out.append((f"#{e} = #{e}", Eq(Const(e), Const(e))))
    for c in sample:
        out.append((f"exists x (x in #{c})", Exists("x", Mem(Var("x"), Const(c)))))
    c = sample[-1]
    out.append((f"forall x (x in #{c} -> x = #{c})",
                Forall("x", Imp(Mem(Var("x"), Const(c)), Eq(Var("x"), Const(c))))))
    out.append(("exists x exists y (x in y)",
                Exists("x", Exists("y", Mem(Var("x"), Var("y"))))))
    out.append(("forall x exists y (x in y)",
                Forall("x", Exists("y", Mem(Var("x"), Var("y"))))))
    out.append(("Extensionality", instantiate_axiom("Extensionality")))
    out.append(("Pairing", instantiate_axiom("Pairing")))
    out.append(("Union", instantiate_axiom("Union")))
    out.append(("PowerSet", instantiate_axiom("PowerSet")))
    out.append(("Separation[z = z]",
                instantiate_axiom("Separation", Eq(Var("z"), Var("z")))))
    if rng is not None:
        for i in range(4):
            f = _random_nff(rng, sample, depth=3)
            out.append((f"random-{i}: {print_formula(f)}", f))
    return out


def _random_nff(rng: random.Random, sample: list[int], depth: int,
                vars_in_scope: tuple[str, ...] = ()) -> Formula:
    """A random closed negation-free sentence (quantifiers bind every variable)."""
    if depth == 0 or (vars_in_scope and rng.random() < 0.4):
        def term() -> Term:
            if vars_in_scope and rng.random() < 0.6:
                return Var(rng.choice(vars_in_scope))
            return Const(rng.choice(sample))
        rel = rng.choice(("=", "in"))
        return Eq(term(), term()) if rel == "=" else Mem(term(), term())
    kind = rng.choice(("and", "or", "imp", "forall", "exists"))
    if kind in ("forall", "exists"):
        var = f"q{len(vars_in_scope)}"
        body = _random_nff(rng, sample, depth - 1, vars_in_scope + (var,))
        return Forall(var, body) if kind == "forall" else Exists(var, body)
    left = _random_nff(rng, sample, depth - 1, vars_in_scope)
    right = _random_nff(rng, sample, depth - 1, vars_in_scope)
    return {"and": And, "or": Or, "imp": Imp}[kind](left, right)
