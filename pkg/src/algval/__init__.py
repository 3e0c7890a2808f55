"""Finite algebra-valued models of set theory.

Build small algebras (chains, powersets, the three-valued core and its
relatives), enumerate bounded-rank universes of names over them, evaluate
set-theoretic sentences under the boolean-style and paraconsistent
assignment functions, and run the named theorem checks, quotient-model
construction and propositional-logic validations.
"""

from .algebra import (
    Algebra,
    AlgebraReport,
    big_join,
    big_meet,
    binary_op,
    boolean_algebra,
    builtin,
    chain,
    check_cobounded,
    check_drim,
    check_filter,
    check_lattice,
    collapse_f,
    designated_cobounded,
    dumps_algebra,
    load_algebra,
    loads_algebra,
    make_algebra,
    ps3,
    star,
    stretch,
)
from .errors import (
    AlgvalError,
    CapabilityError,
    InputError,
    InvariantError,
    ResourceError,
)
from .evaluate import BqResult, EvalContext, battery, check_bq, is_valid, nff_battery
from .formulas import (
    Formula,
    instantiate_axiom,
    is_closed,
    is_negation_free,
    parse,
    print_formula,
)
from .proplogic import eval_prop, is_tautology, parse_prop, random_prop_corpus
from .quotient import (
    QuotientModel,
    build_quotient,
    export_relations,
    quotient_satisfies,
)
from .theorems import CHECKS, CheckResult, Workspace, replay, run_all, run_check
from .universe import (
    Universe,
    build_universe,
    check_name,
    hf_nat,
    parse_hf,
    parse_name_literal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
