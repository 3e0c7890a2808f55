import itertools

import pytest

from algval.algebra import Algebra, builtin, ps3
from algval.errors import CapabilityError, InputError
from algval.evaluate import (
    EvalContext,
    battery,
    check_bq,
    is_valid,
    nff_battery,
)
from algval.formulas import (
    And, Bot, Const, Eq, Forall, Imp, Mem, Not, Top, Var, parse,
)
from algval.universe import build_universe


@pytest.fixture(scope="module")
def ps3_rank2():
    alg, d = ps3()
    uni = build_universe(alg, 2)
    return uni, d


def contexts(uni, d):
    return EvalContext(uni, d, "ba"), EvalContext(uni, d, "pa")


class TestAtomic:
    def test_empty_name_equals_itself(self, ps3_rank2):
        uni, d = ps3_rank2
        for ctx in contexts(uni, d):
            assert ctx.atomic("=", 0, 0) == "1"

    def test_half_weight_membership(self, ps3_rank2):
        uni, d = ps3_rank2
        h = uni.algebra.index["half"]
        v = uni.insert({0: h})
        ba, _ = contexts(uni, d)
        assert ba.atomic("in", 0, v) == "half"

    def test_singleton_weight_pair_separates_the_assignments(self, ps3_rank2):
        uni, d = ps3_rank2
        h, t = uni.algebra.index["half"], uni.algebra.top_i
        u = uni.insert({0: h})
        v = uni.insert({0: t})
        ba, pa = contexts(uni, d)
        assert ba.atomic("=", u, v) == "1"
        assert pa.atomic("=", u, v) == "0"

    def test_bad_relation(self, ps3_rank2):
        uni, d = ps3_rank2
        ba, _ = contexts(uni, d)
        with pytest.raises(InputError):
            ba.atomic("<", 0, 0)


class TestEval:
    def test_truth_constants(self, ps3_rank2):
        uni, d = ps3_rank2
        for ctx in contexts(uni, d):
            assert ctx.eval(Top()) == "1"
            assert ctx.eval(Bot()) == "0"

    def test_contradiction_witness_hits_the_coatom(self, ps3_rank2):
        uni, d = ps3_rank2
        f = parse("exists x. exists y. (x in y /\\ ~(x in y))")
        for ctx in contexts(uni, d):
            assert ctx.eval(f) == "half"
            assert ctx.eval(Not(f)) == "half"

    def test_explosion_collapses_to_bottom(self, ps3_rank2):
        uni, d = ps3_rank2
        phi = parse("exists x. exists y. (x in y /\\ ~(x in y))")
        psi = parse("~ forall x. x = x")
        for ctx in contexts(uni, d):
            assert ctx.eval(Imp(And(phi, Not(phi)), psi)) == "0"

    def test_validity(self, ps3_rank2):
        uni, d = ps3_rank2
        ba, pa = contexts(uni, d)
        assert is_valid(ba, Eq(Const(0), Const(0)))
        phi = parse("exists x. exists y. (x in y /\\ ~(x in y))")
        assert is_valid(ba, phi) and is_valid(ba, Not(phi))
        h, t = uni.algebra.index["half"], uni.algebra.top_i
        u, v = uni.insert({0: h}), uni.insert({0: t})
        assert not is_valid(pa, Eq(Const(u), Const(v)))
        assert is_valid(ba, Eq(Const(u), Const(v)))

    def test_unbound_variable(self, ps3_rank2):
        uni, d = ps3_rank2
        ba, _ = contexts(uni, d)
        with pytest.raises(InputError, match="unbound"):
            ba.value(Mem(Var("x"), Const(0)))

    def test_env_binding_restored(self, ps3_rank2):
        uni, d = ps3_rank2
        ba, _ = contexts(uni, d)
        env = {"x": 0}
        ba.value(Forall("x", Eq(Var("x"), Var("x"))), env)
        assert env == {"x": 0}

    def test_unknown_constant(self, ps3_rank2):
        uni, d = ps3_rank2
        ba, _ = contexts(uni, d)
        with pytest.raises(InputError, match="name constant"):
            ba.value(Eq(Const(10_000), Const(0)))


class TestStarRequirements:
    def _starless(self):
        alg, d = ps3()
        meet = {(a, b): alg.meet(a, b) for a in alg.elements for b in alg.elements}
        join = {(a, b): alg.join(a, b) for a in alg.elements for b in alg.elements}
        imp = {(a, b): alg.imp(a, b) for a in alg.elements for b in alg.elements}
        bare = Algebra("bare3", alg.elements, meet, join, imp, "1", "0")
        return bare, d

    def test_pa_equality_needs_star(self):
        bare, d = self._starless()
        uni = build_universe(bare, 2)
        pa = EvalContext(uni, d, "pa")
        with pytest.raises(CapabilityError, match="star"):
            pa.equality(1, 2)

    def test_negation_needs_star(self):
        bare, d = self._starless()
        uni = build_universe(bare, 2)
        ba = EvalContext(uni, d, "ba")
        with pytest.raises(CapabilityError, match="star"):
            ba.value(Not(Top()))

    def test_ba_works_without_star(self):
        bare, d = self._starless()
        uni = build_universe(bare, 2)
        ba = EvalContext(uni, d, "ba")
        assert ba.atomic("=", 1, 2) in bare.elements


class TestMemoization:
    def test_separate_caches_per_assignment(self, ps3_rank2):
        uni, d = ps3_rank2
        ba, pa = contexts(uni, d)
        h, t = uni.algebra.index["half"], uni.algebra.top_i
        u, v = uni.insert({0: h}), uni.insert({0: t})
        assert ba.atomic("=", u, v) != pa.atomic("=", u, v)

    def test_atomic_values_stable_under_insertion(self, ps3_rank2):
        uni, d = ps3_rank2
        pa = EvalContext(uni, d, "pa")
        before = pa.equality(1, 2)
        uni.insert({1: uni.algebra.top_i, 2: uni.algebra.top_i})
        assert pa.equality(1, 2) == before


class TestProperties:
    @pytest.mark.parametrize("algname", ["ps3", "chain4"])
    def test_pa_two_valued_on_rank2(self, algname):
        alg, d = builtin(algname)
        uni = build_universe(alg, 2)
        pa = EvalContext(uni, d, "pa")
        for u in uni.ids():
            for v in uni.ids():
                assert pa.atomic("=", u, v) in (alg.top, alg.bottom)

    @pytest.mark.parametrize("algname", ["ps3", "chain4"])
    def test_pa_validity_finer_than_ba(self, algname):
        alg, d = builtin(algname)
        uni = build_universe(alg, 2)
        ba, pa = contexts(uni, d)
        for u in uni.ids():
            for v in uni.ids():
                for rel in ("=", "in"):
                    if alg.resolve(pa.atomic(rel, u, v)) in pa.designated:
                        assert alg.resolve(ba.atomic(rel, u, v)) in ba.designated

    @pytest.mark.parametrize("algname", ["bool2", "bool4"])
    def test_boolean_assignments_coincide_rank2(self, algname):
        alg, d = builtin(algname)
        uni = build_universe(alg, 2)
        ba, pa = contexts(uni, d)
        for u in uni.ids():
            for v in uni.ids():
                assert ba.atomic("=", u, v) == pa.atomic("=", u, v)
                assert ba.atomic("in", u, v) == pa.atomic("in", u, v)

    @pytest.mark.parametrize("algname", ["ps3", "chain4"])
    def test_join_collapse_law(self, algname):
        # (join of S) => b equals the meet of the pointwise implications.
        alg, _ = builtin(algname)
        es = alg.elements
        for r in range(len(es) + 1):
            for subset in itertools.combinations(es, r):
                for b in es:
                    lhs = alg.imp(alg.big_join(subset), b)
                    rhs = alg.big_meet([alg.imp(a, b) for a in subset])
                    assert lhs == rhs


class TestBoundedQuantification:
    def test_tautological_body(self, ps3_rank2):
        uni, d = ps3_rank2
        pa = EvalContext(uni, d, "pa")
        u = uni.insert({0: uni.algebra.index["half"]})
        res = check_bq(pa, u, Eq(Var("x"), Var("x")))
        assert res.quantified == res.domain_indexed == "1"

    def test_absurd_body(self, ps3_rank2):
        uni, d = ps3_rank2
        pa = EvalContext(uni, d, "pa")
        u = uni.insert({0: uni.algebra.index["half"]})
        res = check_bq(pa, u, Bot())
        assert res.quantified == res.domain_indexed == "0"

    def test_full_sweep_rank2(self, ps3_rank2):
        uni, d = ps3_rank2
        pa = EvalContext(uni, d, "pa")
        for u in uni.ids():
            for _, phi in battery(uni):
                assert check_bq(pa, u, phi).equal


class TestBatteries:
    def test_battery_contains_the_published_forms(self, ps3_rank2):
        uni, _ = ps3_rank2
        labels = [label for label, _ in battery(uni)]
        assert "x = #0" in labels
        assert "#0 in x" in labels
        assert "x in #0" in labels
        assert "~(x in #0)" in labels
        assert "(x in #0) -> false" in labels
        assert any("exists m forall n" in label for label in labels)

    def test_battery_formulas_have_one_free_variable(self, ps3_rank2):
        from algval.formulas import free_vars

        uni, _ = ps3_rank2
        for _, phi in battery(uni):
            assert free_vars(phi) == {"x"}

    def test_nff_battery_is_negation_free_and_closed(self, ps3_rank2):
        import random

        from algval.formulas import is_closed, is_negation_free

        uni, _ = ps3_rank2
        for _, f in nff_battery(uni, rng=random.Random(3)):
            assert is_negation_free(f)
            assert is_closed(f)


class TestConcurrency:
    def test_shared_context_across_threads(self):
        # The memo is grow-only with deterministic entries, so hammering the
        # same context from several threads must agree with a serial run.
        from concurrent.futures import ThreadPoolExecutor

        alg, d = builtin("ps3")
        uni = build_universe(alg, 3)
        serial = EvalContext(uni, d, "pa")
        expected = {(u, v): serial.equality(u, v)
                    for u in range(40) for v in range(40)}
        shared = EvalContext(uni, d, "pa")

        def worker(offset):
            out = {}
            for u in range(40):
                for v in range(40):
                    a, b = (u, v) if offset % 2 else (v, u)
                    out[(a, b)] = shared.equality(a, b)
            return out

        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(worker, range(8)))
        for got in results:
            for pair, val in got.items():
                assert val == expected[pair]

    def test_quantifier_sweep_matches_under_threads(self):
        from concurrent.futures import ThreadPoolExecutor

        alg, d = builtin("chain4")
        uni = build_universe(alg, 2)
        ctx = EvalContext(uni, d, "pa")
        sentence = parse("forall x. exists y. (x in y /\\ y = y)")
        want = ctx.eval(sentence)
        with ThreadPoolExecutor(max_workers=4) as pool:
            outs = list(pool.map(lambda _: ctx.eval(sentence), range(12)))
        assert set(outs) == {want}
