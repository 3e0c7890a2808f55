import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algval.errors import InputError
from algval.formulas import (
    And,
    Bot,
    Const,
    Eq,
    Exists,
    Forall,
    Imp,
    Mem,
    Not,
    Or,
    Top,
    Var,
    bound_vars,
    free_vars,
    iff,
    instantiate_axiom,
    is_closed,
    is_negation_free,
    parse,
    print_formula,
    rename_var,
    subst_const,
)


class TestParsing:
    def test_quantified_implication(self):
        f = parse("forall x. (x in #5 -> x = #5)")
        assert f == Forall("x", Imp(Mem(Var("x"), Const(5)), Eq(Var("x"), Const(5))))

    def test_negated_atom(self):
        assert parse("~(p in q)") == Not(Mem(Var("p"), Var("q")))

    def test_paraconsistency_witness(self):
        f = parse("exists x. exists y. (x in y /\\ ~(x in y))")
        want = Exists("x", Exists("y", And(Mem(Var("x"), Var("y")),
                                           Not(Mem(Var("x"), Var("y"))))))
        assert f == want

    def test_precedence(self):
        f = parse("a in b /\\ c in d \\/ e in f -> g in h")
        assert isinstance(f, Imp)
        assert isinstance(f.left, Or)
        assert isinstance(f.left.left, And)

    def test_imp_right_associative(self):
        f = parse("a = a -> b = b -> c = c")
        assert isinstance(f, Imp) and isinstance(f.right, Imp)

    def test_not_binds_tightest(self):
        f = parse("~a in b /\\ c in d")
        assert isinstance(f, And) and isinstance(f.left, Not)

    def test_iff_desugars(self):
        f = parse("a in b <-> b in a")
        assert f == iff(Mem(Var("a"), Var("b")), Mem(Var("b"), Var("a")))

    def test_bounded_quantifier_sugar(self):
        f = parse("forall x in #1. x = x")
        assert f == Forall("x", Imp(Mem(Var("x"), Const(1)), Eq(Var("x"), Var("x"))))
        g = parse("exists x in #1. x = x")
        assert g == Exists("x", And(Mem(Var("x"), Const(1)), Eq(Var("x"), Var("x"))))

    def test_constants_and_truth(self):
        assert parse("true") == Top()
        assert parse("false") == Bot()
        assert parse("#0 = #1") == Eq(Const(0), Const(1))

    def test_quantifier_body_extends_right(self):
        f = parse("forall x. x = x -> false")
        assert isinstance(f, Forall)
        assert isinstance(f.body, Imp)

    def test_negated_quantifier(self):
        f = parse("~ forall x. x = x")
        assert f == Not(Forall("x", Eq(Var("x"), Var("x"))))

    def test_errors(self):
        for text in ("forall . x = x", "x =", "(x = x", "x ? y",
                     "x in in y", "forall in. x = x", "x = x )"):
            with pytest.raises(InputError):
                parse(text)

    def test_unknown_constant_with_bound(self):
        with pytest.raises(InputError, match="unknown name constant"):
            parse("#9 = #9", max_name=4)
        assert parse("#3 = #3", max_name=4) == Eq(Const(3), Const(3))


def formula_strategy():
    terms = st.one_of(
        st.sampled_from([Var("x"), Var("y"), Var("z")]),
        st.builds(Const, st.integers(min_value=0, max_value=5)),
    )
    atoms = st.one_of(
        st.builds(Eq, terms, terms),
        st.builds(Mem, terms, terms),
        st.just(Top()),
        st.just(Bot()),
    )
    return st.recursive(
        atoms,
        lambda kids: st.one_of(
            st.builds(And, kids, kids),
            st.builds(Or, kids, kids),
            st.builds(Imp, kids, kids),
            st.builds(Not, kids),
            st.builds(Forall, st.sampled_from(["x", "y", "z"]), kids),
            st.builds(Exists, st.sampled_from(["x", "y", "z"]), kids),
        ),
        max_leaves=25,
    )


class TestPrinting:
    @settings(max_examples=300, deadline=None)
    @given(formula_strategy())
    def test_parse_print_round_trip(self, f):
        assert parse(print_formula(f)) == f

    @settings(max_examples=150, deadline=None)
    @given(formula_strategy())
    def test_printed_form_is_a_fixed_point(self, f):
        text = print_formula(f)
        assert print_formula(parse(text)) == text

    def test_readable_output(self):
        f = Forall("x", Imp(Mem(Var("x"), Const(2)), Eq(Var("x"), Const(2))))
        assert print_formula(f) == "forall x. x in #2 -> x = #2"


class TestFragments:
    def test_negation_free_examples(self):
        assert is_negation_free(Imp(Mem(Var("x"), Var("y")), Bot()))
        assert not is_negation_free(Not(Mem(Var("x"), Var("y"))))
        assert is_negation_free(Top())
        assert not is_negation_free(Forall("x", Not(Eq(Var("x"), Var("x")))))

    def test_free_and_bound(self):
        f = parse("forall x. x in y")
        assert free_vars(f) == {"y"}
        assert bound_vars(f) == {"x"}
        assert not is_closed(f)
        assert is_closed(parse("forall x. forall y. x in y"))

    def test_subst_const(self):
        f = parse("forall x. x in y")
        g = subst_const(f, "y", 3)
        assert g == parse("forall x. x in #3")
        # bound occurrences stay untouched
        assert subst_const(f, "x", 3) == f

    def test_rename_var(self):
        f = parse("x in y")
        assert rename_var(f, "x", "w") == parse("w in y")
        with pytest.raises(InputError):
            rename_var(f, "x", "y")


class TestAxiomSchemas:
    def test_pairing_shape(self):
        f = instantiate_axiom("Pairing")
        want = Forall("x", Forall("y", Exists("z", Forall("w", iff(
            Mem(Var("w"), Var("z")),
            Or(Eq(Var("w"), Var("x")), Eq(Var("w"), Var("y"))))))))
        assert f == want

    def test_separation_with_trivial_parameter(self):
        f = instantiate_axiom("Separation", Eq(Var("z"), Var("z")))
        want = Forall("x", Exists("y", Forall("z", iff(
            Mem(Var("z"), Var("y")),
            And(Mem(Var("z"), Var("x")), Eq(Var("z"), Var("z")))))))
        assert f == want

    def test_extensionality_bar_shape(self):
        f = instantiate_axiom("ExtensionalityBar")
        z, x, y = Var("z"), Var("x"), Var("y")
        want = Forall("x", Forall("y", Imp(
            Forall("z", And(iff(Mem(z, x), Mem(z, y)),
                            iff(Not(Mem(z, x)), Not(Mem(z, y))))),
            Eq(x, y))))
        assert f == want

    def test_all_schemas_are_closed(self):
        for name in ("Extensionality", "ExtensionalityBar", "Pairing",
                     "Infinity", "Union", "PowerSet"):
            assert is_closed(instantiate_axiom(name))
        assert is_closed(instantiate_axiom("Separation", Eq(Var("z"), Var("z"))))
        assert is_closed(instantiate_axiom("Collection", Mem(Var("y"), Var("z"))))
        assert is_closed(instantiate_axiom("Foundation", Eq(Var("x"), Var("x"))))

    def test_parameter_arity_enforced(self):
        with pytest.raises(InputError, match="may only use"):
            instantiate_axiom("Separation", Eq(Var("q"), Var("q")))
        with pytest.raises(InputError, match="needs a parameter"):
            instantiate_axiom("Separation")
        with pytest.raises(InputError, match="avoid"):
            instantiate_axiom("Foundation",
                              Exists("y", Mem(Var("y"), Var("x"))))
        with pytest.raises(InputError, match="unknown axiom schema"):
            instantiate_axiom("Choice")

    def test_infinity_mentions_empty_and_successor(self):
        f = instantiate_axiom("Infinity")
        text = print_formula(f)
        assert text.startswith("exists x.")
        assert "~" in text  # the emptiness clause
