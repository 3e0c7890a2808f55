"""Finite bounded lattices with implication and star, plus their validators.

Every algebra here is a small finite carrier with total operation tables.
Element identifiers are opaque interned strings; the partial order is always
induced from the meet table (a <= b iff a /\\ b == a), never from identifier
order.  Operations are pure table lookups, so constructed algebras are
immutable and safe to share between threads.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CapabilityError, InputError

# Canonical three-valued target of the collapse map.
PS3_TOP = "1"
PS3_MID = "half"
PS3_BOT = "0"

# Maximum carrier size for exhaustive subset sweeps (2^n subsets).
SUBSET_SWEEP_CAP = 12


class Algebra:
    """A finite bounded lattice with implication and an optional star table.

    `meet`, `join`, `imp` are total binary tables and `star` a total unary
    table, all over `elements`.  Nothing is validated beyond totality at
    construction time; the lattice and implication laws are checked
    separately so that deliberately defective tables can be built and
    reported on.
    """

    def __init__(
        self,
        name: str,
        elements: Sequence[str],
        meet: Mapping[tuple[str, str], str],
        join: Mapping[tuple[str, str], str],
        imp: Mapping[tuple[str, str], str],
        top: str,
        bottom: str,
        star: Optional[Mapping[str, str]] = None,
        star_rule: Optional[str] = None,
    ):
        if len(set(elements)) != len(elements):
            raise InputError(f"duplicate element identifiers in {elements!r}")
        self.name = name
        self.elements: tuple[str, ...] = tuple(elements)
        self.index: dict[str, int] = {e: i for i, e in enumerate(self.elements)}
        if top not in self.index or bottom not in self.index:
            raise InputError("top/bottom must be carrier elements")
        self.top = top
        self.bottom = bottom
        self.top_i = self.index[top]
        self.bottom_i = self.index[bottom]
        self.meet_t = self._binary_table(meet, "meet")
        self.join_t = self._binary_table(join, "join")
        self.imp_t = self._binary_table(imp, "imp")
        self.star_t = self._unary_table(star, "star") if star is not None else None
        # How the star table was derived; "designated" stars are rebuilt when
        # the designated set is overridden.
        self.star_rule = star_rule
        self._cobounded_cache: Optional[bool] = None

    # -- construction helpers -------------------------------------------------

    def _binary_table(self, table, label) -> tuple[tuple[int, ...], ...]:
        n = len(self.elements)
        out = [[-1] * n for _ in range(n)]
        for (a, b), c in table.items():
            try:
                out[self.index[a]][self.index[b]] = self.index[c]
            except KeyError as exc:
                raise InputError(f"{label} entry {a},{b}->{c}: unknown element {exc}")
        for i, row in enumerate(out):
            for j, v in enumerate(row):
                if v < 0:
                    raise InputError(
                        f"{label} table is not total: missing entry "
                        f"({self.elements[i]}, {self.elements[j]})"
                    )
        return tuple(tuple(row) for row in out)

    def _unary_table(self, table, label) -> tuple[int, ...]:
        n = len(self.elements)
        out = [-1] * n
        for a, b in table.items():
            try:
                out[self.index[a]] = self.index[b]
            except KeyError as exc:
                raise InputError(f"{label} entry {a}->{b}: unknown element {exc}")
        for i, v in enumerate(out):
            if v < 0:
                raise InputError(f"{label} table missing entry for {self.elements[i]}")
        return tuple(out)

    # -- string-level API ------------------------------------------------------

    def _i(self, a: str) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise InputError(f"unknown element {a!r} of algebra {self.name}")

    def resolve(self, a: str) -> str:
        """Resolve an element identifier, accepting the documented aliases
        one/zero (for elements named 1/0) and top/bottom."""
        if a in self.index:
            return a
        low = a.lower()
        if low == "one" and "1" in self.index:
            return "1"
        if low == "zero" and "0" in self.index:
            return "0"
        if low == "top":
            return self.top
        if low == "bottom":
            return self.bottom
        raise InputError(f"unknown element {a!r} of algebra {self.name}")

    def meet(self, a: str, b: str) -> str:
        return self.elements[self.meet_t[self._i(a)][self._i(b)]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self.join_t[self._i(a)][self._i(b)]]

    def imp(self, a: str, b: str) -> str:
        return self.elements[self.imp_t[self._i(a)][self._i(b)]]

    def star(self, a: str) -> str:
        if self.star_t is None:
            raise CapabilityError(f"algebra {self.name} has no star table")
        return self.elements[self.star_t[self._i(a)]]

    def le(self, a: str, b: str) -> bool:
        return self.meet(a, b) == a

    def big_meet(self, elems: Iterable[str]) -> str:
        """Meet of a finite subset; the empty meet is the top element."""
        acc = self.top_i
        t = self.meet_t
        for a in elems:
            acc = t[acc][self._i(a)]
        return self.elements[acc]

    def big_join(self, elems: Iterable[str]) -> str:
        """Join of a finite subset; the empty join is the bottom element."""
        acc = self.bottom_i
        t = self.join_t
        for a in elems:
            acc = t[acc][self._i(a)]
        return self.elements[acc]

    def intermediates(self) -> list[str]:
        """Elements strictly between bottom and top, in carrier order."""
        return [e for e in self.elements if e != self.top and e != self.bottom]

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Algebra({self.name}, {len(self.elements)} elements)"


def binary_op(alg: Algebra, op: str, a: str, b: str) -> str:
    """Apply one of the binary tables by name ('meet', 'join' or 'imp')."""
    if op not in ("meet", "join", "imp"):
        raise InputError(f"unknown binary operation {op!r}")
    return getattr(alg, op)(a, b)


def star(alg: Algebra, a: str) -> str:
    return alg.star(a)


def big_meet(alg: Algebra, elems: Iterable[str]) -> str:
    return alg.big_meet(elems)


def big_join(alg: Algebra, elems: Iterable[str]) -> str:
    return alg.big_join(elems)


# -- law reports ---------------------------------------------------------------


@dataclass
class AlgebraReport:
    """Named verdicts plus a counterexample tuple for every failed law."""

    algebra: str
    verdicts: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, tuple[str, ...]] = field(default_factory=dict)
    info: dict[str, str] = field(default_factory=dict)

    def record(self, law: str, ok: bool, witness: tuple[str, ...] = ()):
        self.verdicts[law] = ok
        if not ok:
            self.witnesses[law] = witness
        else:
            self.witnesses.pop(law, None)

    def ok(self, law: str) -> bool:
        return self.verdicts.get(law, False)

    def lines(self) -> list[str]:
        out = []
        for law in sorted(self.verdicts):
            mark = "true" if self.verdicts[law] else "false"
            suffix = ""
            if law in self.witnesses:
                suffix = "  witness: " + " ".join(self.witnesses[law])
            out.append(f"{law}: {mark}{suffix}")
        for k in sorted(self.info):
            out.append(f"{k}: {self.info[k]}")
        return out


def check_lattice(alg: Algebra) -> AlgebraReport:
    """Exhaustively test the lattice laws, boundedness and distributivity."""
    rep = AlgebraReport(alg.name)
    es = alg.elements
    lattice_ok = True
    witness: tuple[str, ...] = ()

    def fail(*w: str):
        nonlocal lattice_ok, witness
        if lattice_ok:
            lattice_ok, witness = False, w

    for a, b in itertools.product(es, repeat=2):
        if alg.meet(a, b) != alg.meet(b, a):
            fail("commutativity-meet", a, b)
        if alg.join(a, b) != alg.join(b, a):
            fail("commutativity-join", a, b)
        if alg.meet(a, alg.join(a, b)) != a:
            fail("absorption-meet", a, b)
        if alg.join(a, alg.meet(a, b)) != a:
            fail("absorption-join", a, b)
    for a in es:
        if alg.meet(a, a) != a:
            fail("idempotence-meet", a)
        if alg.join(a, a) != a:
            fail("idempotence-join", a)
    for a, b, c in itertools.product(es, repeat=3):
        if alg.meet(a, alg.meet(b, c)) != alg.meet(alg.meet(a, b), c):
            fail("associativity-meet", a, b, c)
        if alg.join(a, alg.join(b, c)) != alg.join(alg.join(a, b), c):
            fail("associativity-join", a, b, c)
    rep.record("lattice", lattice_ok, witness)

    bounded_ok = True
    bw: tuple[str, ...] = ()
    for a in es:
        if alg.meet(a, alg.top) != a:
            bounded_ok, bw = False, ("top", a)
            break
        if alg.join(a, alg.bottom) != a:
            bounded_ok, bw = False, ("bottom", a)
            break
    rep.record("bounded", bounded_ok, bw)

    dist_ok = True
    dw: tuple[str, ...] = ()
    for a, b, c in itertools.product(es, repeat=3):
        if alg.meet(a, alg.join(b, c)) != alg.join(alg.meet(a, b), alg.meet(a, c)):
            dist_ok, dw = False, ("meet-over-join", a, b, c)
            break
        if alg.join(a, alg.meet(b, c)) != alg.meet(alg.join(a, b), alg.join(a, c)):
            dist_ok, dw = False, ("join-over-meet", a, b, c)
            break
    rep.record("distributive", dist_ok, dw)
    return rep


def check_drim(alg: Algebra) -> AlgebraReport:
    """Test the four implication laws P1-P4 over all element triples.

    P1: a /\\ b <= c implies a <= b => c
    P2: b <= c implies a => b <= a => c
    P3: b <= c implies c => a <= b => a
    P4: (a /\\ b) => c == a => (b => c)
    """
    rep = check_lattice(alg)
    if not (rep.ok("lattice") and rep.ok("bounded")):
        rep.record("drim", False, ("not-a-bounded-lattice",))
        return rep
    es = alg.elements
    ok = True
    witness: tuple[str, ...] = ()
    for a, b, c in itertools.product(es, repeat=3):
        if alg.le(alg.meet(a, b), c) and not alg.le(a, alg.imp(b, c)):
            ok, witness = False, ("P1", a, b, c)
            break
        if alg.le(b, c):
            if not alg.le(alg.imp(a, b), alg.imp(a, c)):
                ok, witness = False, ("P2", a, b, c)
                break
            if not alg.le(alg.imp(c, a), alg.imp(b, a)):
                ok, witness = False, ("P3", a, b, c)
                break
        if alg.imp(alg.meet(a, b), c) != alg.imp(a, alg.imp(b, c)):
            ok, witness = False, ("P4", a, b, c)
            break
    rep.record("drim", ok, witness)
    return rep


def check_cobounded(alg: Algebra) -> AlgebraReport:
    """Test the cobounded-algebra conditions two independent ways.

    A cobounded algebra is a complete distributive bounded lattice where a
    join reaches top only via a member that is already top (dually for meets
    and bottom), and whose implication collapses to two values:
    a => b == bottom iff a != bottom and b == bottom, else top.

    The join/meet conditions are verified both by exhaustive subset search
    (carriers up to 12 elements) and by the closed-form characterization
    join(carrier minus top) != top / meet(carrier minus bottom) != bottom.
    The unique atom and coatom are reported when the verdict is true.
    """
    rep = check_lattice(alg)
    es = alg.elements
    structural = rep.ok("lattice") and rep.ok("bounded") and rep.ok("distributive")

    coatom = alg.big_join([e for e in es if e != alg.top])
    atom = alg.big_meet([e for e in es if e != alg.bottom])
    closed_ok = coatom != alg.top and atom != alg.bottom
    closed_witness: tuple[str, ...] = ()
    if coatom == alg.top:
        closed_witness = ("join-of-non-top-elements-is-top",)
    elif atom == alg.bottom:
        closed_witness = ("meet-of-non-bottom-elements-is-bottom",)

    subset_ok: Optional[bool] = None
    subset_witness: tuple[str, ...] = ()
    if len(es) <= SUBSET_SWEEP_CAP:
        subset_ok = True
        for r in range(1, len(es) + 1):
            for combo in itertools.combinations(es, r):
                if alg.big_join(combo) == alg.top and alg.top not in combo:
                    subset_ok, subset_witness = False, ("join",) + combo
                    break
                if alg.big_meet(combo) == alg.bottom and alg.bottom not in combo:
                    subset_ok, subset_witness = False, ("meet",) + combo
                    break
            if not subset_ok:
                break
        rep.info["cobounded-subset-search"] = "true" if subset_ok else "false"
    rep.info["cobounded-closed-form"] = "true" if closed_ok else "false"

    imp_ok = True
    imp_witness: tuple[str, ...] = ()
    for a, b in itertools.product(es, repeat=2):
        want = alg.bottom if (a != alg.bottom and b == alg.bottom) else alg.top
        if alg.imp(a, b) != want:
            imp_ok, imp_witness = False, ("imp", a, b, alg.imp(a, b))
            break

    conditions_ok = closed_ok if subset_ok is None else (closed_ok and subset_ok)
    ok = structural and conditions_ok and imp_ok
    if not structural:
        rep.record("cobounded", False, ("not-a-distributive-bounded-lattice",))
    elif not conditions_ok:
        rep.record("cobounded", False, subset_witness or closed_witness)
    else:
        rep.record("cobounded", ok, imp_witness)
    if ok:
        rep.info["atom"] = atom
        rep.info["coatom"] = coatom
    return rep


def is_filter(alg: Algebra, members: Iterable[str]) -> tuple[bool, tuple[str, ...]]:
    """Filter test: contains top, excludes bottom, upward closed, meet closed."""
    d = frozenset(alg.resolve(m) for m in members)
    if alg.top not in d:
        return False, ("missing-top",)
    if alg.bottom in d:
        return False, ("contains-bottom",)
    for x in d:
        for y in alg.elements:
            if alg.le(x, y) and y not in d:
                return False, ("not-upward-closed", x, y)
    for x, y in itertools.product(sorted(d), repeat=2):
        if alg.meet(x, y) not in d:
            return False, ("not-meet-closed", x, y)
    return True, ()


def _generated_filter_is_proper(alg: Algebra, d: frozenset, a: str) -> bool:
    """Whether the filter generated by d and a is still a proper filter."""
    base = {alg.meet(x, a) for x in d} | {a}
    closure = {y for b in base for y in alg.elements if alg.le(b, y)}
    return alg.bottom not in closure


def check_filter(alg: Algebra, members: Iterable[str]) -> AlgebraReport:
    """Filter/ultrafilter verdicts for a candidate designated set.

    Also reports whether the pair (algebra, set) forms a designated
    cobounded algebra (star present and matching the designated-relative
    rule) and an ultra-designated one (the set is additionally maximal, in
    which case everything outside it must be the bottom element).
    """
    rep = AlgebraReport(alg.name)
    d = frozenset(alg.resolve(m) for m in members)
    ok, witness = is_filter(alg, d)
    rep.record("filter", ok, witness)

    if ok:
        ultra = True
        uw: tuple[str, ...] = ()
        for a in alg.elements:
            if a in d:
                continue
            if _generated_filter_is_proper(alg, d, a):
                ultra, uw = False, ("extendable-by", a)
                break
        if len(alg.elements) <= SUBSET_SWEEP_CAP:
            # Dual route: brute maximality among all filters.
            brute = True
            for r in range(len(d) + 1, len(alg.elements) + 1):
                for combo in itertools.combinations(alg.elements, r):
                    cs = frozenset(combo)
                    if d < cs and is_filter(alg, cs)[0]:
                        brute = False
                        break
                if not brute:
                    break
            rep.info["ultrafilter-subset-search"] = "true" if brute else "false"
            rep.info["ultrafilter-maximality"] = "true" if ultra else "false"
            ultra = ultra and brute
        rep.record("ultrafilter", ultra, uw)
    else:
        rep.record("ultrafilter", False, witness)

    cob = check_cobounded(alg)
    desig_ok = cob.ok("cobounded") and ok and alg.star_t is not None
    dw: tuple[str, ...] = ()
    if desig_ok:
        for a in alg.elements:
            if a == alg.top:
                want = alg.bottom
            elif a in d:
                want = a
            else:
                want = alg.top
            if alg.star(a) != want:
                desig_ok, dw = False, ("star", a, alg.star(a), "expected", want)
                break
    elif cob.ok("cobounded") and ok:
        dw = ("star-table-absent",)
    else:
        dw = ("not-cobounded-or-not-a-filter",)
    rep.record("designated-cobounded", desig_ok, dw)

    ultra_desig = desig_ok and rep.ok("ultrafilter")
    udw: tuple[str, ...] = ()
    if ultra_desig:
        outside = frozenset(alg.elements) - d
        if outside != frozenset({alg.bottom}):
            # Cannot happen for a genuine ultrafilter on a cobounded algebra;
            # reported as a failed verdict rather than silently ignored.
            ultra_desig = False
            udw = ("complement-of-designated-not-bottom",) + tuple(sorted(outside))
        else:
            rep.info["complement-of-designated"] = alg.bottom
    rep.record("ultra-designated-cobounded", ultra_desig, udw)
    return rep


# -- collapse map ----------------------------------------------------------------


def _is_cobounded(alg: Algebra) -> bool:
    if alg._cobounded_cache is None:
        alg._cobounded_cache = check_cobounded(alg).ok("cobounded")
    return alg._cobounded_cache


def collapse_f(alg: Algebra, a: str) -> str:
    """Collapse an element of a cobounded algebra into the three-valued core.

    Top maps to 1, bottom to 0, everything strictly between to half.  This
    is a homomorphism for meet, join, imp and (designated-rule) star, and it
    commutes with arbitrary finite meets and joins.
    """
    if not _is_cobounded(alg):
        raise CapabilityError(f"collapse is only defined on cobounded algebras, not {alg.name}")
    a = alg.resolve(a)
    if a == alg.top:
        return PS3_TOP
    if a == alg.bottom:
        return PS3_BOT
    return PS3_MID


# -- builders --------------------------------------------------------------------


def _designated_star(elements, top, bottom, designated) -> dict[str, str]:
    star_table = {}
    for a in elements:
        if a == top:
            star_table[a] = bottom
        elif a in designated:
            star_table[a] = a
        else:
            star_table[a] = top
    return star_table


def _collapsing_imp(elements, bottom, top) -> dict[tuple[str, str], str]:
    return {
        (a, b): (bottom if (a != bottom and b == bottom) else top)
        for a in elements
        for b in elements
    }


def ps3() -> tuple[Algebra, frozenset[str]]:
    """The three-valued algebra with designated set {1, half}.

    The star table follows the designated-relative rule (1* = 0,
    half* = half, 0* = 1), which is what every downstream result relies on.
    """
    es = ("1", "half", "0")
    meet = {
        ("1", "1"): "1", ("1", "half"): "half", ("1", "0"): "0",
        ("half", "1"): "half", ("half", "half"): "half", ("half", "0"): "0",
        ("0", "1"): "0", ("0", "half"): "0", ("0", "0"): "0",
    }
    join = {
        ("1", "1"): "1", ("1", "half"): "1", ("1", "0"): "1",
        ("half", "1"): "1", ("half", "half"): "half", ("half", "0"): "half",
        ("0", "1"): "1", ("0", "half"): "half", ("0", "0"): "0",
    }
    imp = {
        ("1", "1"): "1", ("1", "half"): "1", ("1", "0"): "0",
        ("half", "1"): "1", ("half", "half"): "1", ("half", "0"): "0",
        ("0", "1"): "1", ("0", "half"): "1", ("0", "0"): "1",
    }
    designated = frozenset({"1", "half"})
    star_table = {"1": "0", "half": "half", "0": "1"}
    alg = Algebra("ps3", es, meet, join, imp, "1", "0", star_table, star_rule="designated")
    return alg, designated


def boolean_algebra(n_atoms: int) -> tuple[Algebra, frozenset[str]]:
    """Powerset algebra on n atoms with classical implication and complement."""
    if n_atoms < 1:
        raise InputError("a boolean algebra needs at least one atom")
    masks = list(range(1 << n_atoms))
    full = (1 << n_atoms) - 1

    def label(m: int) -> str:
        if m == 0:
            return "0"
        if m == full:
            return "1"
        return "".join(f"p{i + 1}" for i in range(n_atoms) if m >> i & 1)

    es = [label(m) for m in masks]
    by_mask = dict(zip(masks, es))
    meet = {(by_mask[a], by_mask[b]): by_mask[a & b] for a in masks for b in masks}
    join = {(by_mask[a], by_mask[b]): by_mask[a | b] for a in masks for b in masks}
    imp = {(by_mask[a], by_mask[b]): by_mask[(a ^ full) | b] for a in masks for b in masks}
    star_table = {by_mask[a]: by_mask[a ^ full] for a in masks}
    alg = Algebra(
        f"bool{len(es)}", es, meet, join, imp, by_mask[full], by_mask[0],
        star_table, star_rule="complement",
    )
    return alg, frozenset({by_mask[full]})


def chain(k: int, designated: Optional[Iterable[str]] = None,
          star_rule: str = "designated") -> tuple[Algebra, frozenset[str]]:
    """Totally ordered k-element algebra with the collapsing implication.

    Elements are 0 < a < b < ... < 1.  The default designated set is
    everything except bottom, which is an ultrafilter.  `star_rule` picks
    between the designated-relative star (default) and the fixed-middle
    star that leaves every non-extreme element in place regardless of the
    designated set; the two coincide for the default designated set.
    """
    if k < 2:
        raise InputError("a chain needs at least two elements")
    mids = [chr(ord("a") + i) for i in range(k - 2)]
    es = ["0"] + mids + ["1"]
    order = {e: i for i, e in enumerate(es)}
    meet = {(x, y): (x if order[x] <= order[y] else y) for x in es for y in es}
    join = {(x, y): (y if order[x] <= order[y] else x) for x in es for y in es}
    imp = _collapsing_imp(es, "0", "1")
    if designated is None:
        d = frozenset(es[1:])
    else:
        d = frozenset(designated)
    if star_rule == "designated":
        star_table = _designated_star(es, "1", "0", d)
    elif star_rule == "fixed-middle":
        star_table = {e: e for e in es}
        star_table["1"], star_table["0"] = "0", "1"
    else:
        raise InputError(f"unknown star rule {star_rule!r}")
    alg = Algebra(f"chain{k}", es, meet, join, imp, "1", "0", star_table,
                  star_rule=star_rule)
    ok, witness = is_filter(alg, d)
    if not ok:
        raise InputError(f"designated set {sorted(d)} is not a filter: {witness}")
    return alg, d


def stretch(base: Algebra, designated: Optional[Iterable[str]] = None
            ) -> tuple[Algebra, frozenset[str]]:
    """Add a fresh top and bottom around a bounded lattice.

    The base's top and bottom become the unique coatom and atom of the
    result, so the stretched algebra is cobounded; implication and star are
    installed per the designated-cobounded rules.
    """
    base_rep = check_lattice(base)
    if not (base_rep.ok("lattice") and base_rep.ok("bounded")):
        raise InputError(f"cannot stretch {base.name}: not a bounded lattice")
    ren = {e: f"b_{e}" for e in base.elements}
    es = ["0"] + [ren[e] for e in base.elements] + ["1"]

    def mt(x: str, y: str) -> str:
        if x == "0" or y == "0":
            return "0"
        if x == "1":
            return y
        if y == "1":
            return x
        return ren[base.meet(x[2:], y[2:])]

    def jn(x: str, y: str) -> str:
        if x == "1" or y == "1":
            return "1"
        if x == "0":
            return y
        if y == "0":
            return x
        return ren[base.join(x[2:], y[2:])]

    meet = {(x, y): mt(x, y) for x in es for y in es}
    join = {(x, y): jn(x, y) for x in es for y in es}
    imp = _collapsing_imp(es, "0", "1")
    d = frozenset(es[1:]) if designated is None else frozenset(designated)
    star_table = _designated_star(es, "1", "0", d)
    alg = Algebra(f"stretch-{base.name}", es, meet, join, imp, "1", "0",
                  star_table, star_rule="designated")
    ok, witness = is_filter(alg, d)
    if not ok:
        raise InputError(f"designated set {sorted(d)} is not a filter: {witness}")
    return alg, d


def designated_cobounded(lattice: Algebra, designated: Iterable[str]
                         ) -> tuple[Algebra, frozenset[str]]:
    """Install the collapsing implication and designated-relative star
    on top of an existing lattice's meet/join structure."""
    d = frozenset(lattice.resolve(m) for m in designated)
    ok, witness = is_filter(lattice, d)
    if not ok:
        raise InputError(f"designated set {sorted(d)} is not a filter: {witness}")
    es = lattice.elements
    meet = {(a, b): lattice.meet(a, b) for a in es for b in es}
    join = {(a, b): lattice.join(a, b) for a in es for b in es}
    imp = _collapsing_imp(es, lattice.bottom, lattice.top)
    star_table = _designated_star(es, lattice.top, lattice.bottom, d)
    alg = Algebra(f"{lattice.name}-designated", es, meet, join, imp,
                  lattice.top, lattice.bottom, star_table, star_rule="designated")
    return alg, d


def make_algebra(kind: str, **kwargs) -> tuple[Algebra, frozenset[str]]:
    """Dispatch constructor: ps3, boolean(n_atoms), chain(k), stretch(base),
    designated_cobounded(lattice, designated)."""
    if kind == "ps3":
        return ps3()
    if kind == "boolean":
        return boolean_algebra(kwargs["n_atoms"])
    if kind == "chain":
        return chain(kwargs["k"], kwargs.get("designated"),
                     kwargs.get("star_rule", "designated"))
    if kind == "stretch":
        return stretch(kwargs["base"], kwargs.get("designated"))
    if kind == "designated_cobounded":
        return designated_cobounded(kwargs["lattice"], kwargs["designated"])
    raise InputError(f"unknown algebra kind {kind!r}")


BUILTIN_NAMES = ("ps3", "bool2", "bool4") + tuple(f"chain{k}" for k in range(3, 9)) + (
    "stretch-bool4",
)


def builtin(name: str) -> tuple[Algebra, frozenset[str]]:
    """Resolve one of the named builtin algebras."""
    if name == "ps3":
        return ps3()
    if name == "bool2":
        return boolean_algebra(1)
    if name == "bool4":
        return boolean_algebra(2)
    if name.startswith("chain") and name[5:].isdigit():
        return chain(int(name[5:]))
    if name == "stretch-bool4":
        base, _ = boolean_algebra(2)
        return stretch(base)
    raise InputError(f"unknown builtin algebra {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def override_designated(alg: Algebra, designated: Iterable[str]
                        ) -> tuple[Algebra, frozenset[str]]:
    """Replace the designated set, rebuilding the star table when it was
    derived from the old set."""
    d = frozenset(alg.resolve(m) for m in designated)
    ok, witness = is_filter(alg, d)
    if not ok:
        raise InputError(f"designated set {sorted(d)} is not a filter: {witness}")
    if alg.star_rule != "designated":
        return alg, d
    es = alg.elements
    meet = {(a, b): alg.meet(a, b) for a in es for b in es}
    join = {(a, b): alg.join(a, b) for a in es for b in es}
    imp = {(a, b): alg.imp(a, b) for a in es for b in es}
    star_table = _designated_star(es, alg.top, alg.bottom, d)
    out = Algebra(alg.name, es, meet, join, imp, alg.top, alg.bottom,
                  star_table, star_rule="designated")
    return out, d


# -- textual definition files ------------------------------------------------------
#
# Line-oriented format, '#' starts a comment:
#   elements 1 half 0
#   top 1
#   bottom 0
#   designated 1 half
#   meet A B C      (one line per ordered pair, tables must be total)
#   join A B C
#   imp A B C
#   star A B        (optional; either absent or total)


def loads_algebra(text: str, name: str = "file") -> tuple[Algebra, frozenset[str]]:
    elements: list[str] = []
    tables: dict[str, dict] = {"meet": {}, "join": {}, "imp": {}, "star": {}}
    top = bottom = None
    designated: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kw, args = tokens[0], tokens[1:]
        if kw == "elements":
            elements = args
        elif kw in ("top", "bottom"):
            if len(args) != 1:
                raise InputError(f"line {lineno}: {kw} takes one element")
            if kw == "top":
                top = args[0]
            else:
                bottom = args[0]
        elif kw == "designated":
            designated = args
        elif kw in ("meet", "join", "imp"):
            if len(args) != 3:
                raise InputError(f"line {lineno}: {kw} takes a triple")
            tables[kw][(args[0], args[1])] = args[2]
        elif kw == "star":
            if len(args) != 2:
                raise InputError(f"line {lineno}: star takes a pair")
            tables["star"][args[0]] = args[1]
        else:
            raise InputError(f"line {lineno}: unknown keyword {kw!r}")
    if not elements:
        raise InputError("algebra file declares no elements")
    if top is None or bottom is None:
        raise InputError("algebra file must declare top and bottom")
    star_table = tables["star"] or None
    alg = Algebra(name, elements, tables["meet"], tables["join"], tables["imp"],
                  top, bottom, star_table, star_rule="explicit" if star_table else None)
    return alg, frozenset(alg.resolve(m) for m in designated)


def load_algebra(path: str) -> tuple[Algebra, frozenset[str]]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_algebra(text, name=os.path.splitext(os.path.basename(path))[0])


def dumps_algebra(alg: Algebra, designated: Iterable[str]) -> str:
    lines = ["elements " + " ".join(alg.elements),
             f"top {alg.top}", f"bottom {alg.bottom}",
             "designated " + " ".join(sorted(designated))]
    for op in ("meet", "join", "imp"):
        for a in alg.elements:
            for b in alg.elements:
                lines.append(f"{op} {a} {b} {binary_op(alg, op, a, b)}")
    if alg.star_t is not None:
        for a in alg.elements:
            lines.append(f"star {a} {alg.star(a)}")
    return "\n".join(lines) + "\n"
