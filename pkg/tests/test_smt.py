import importlib.util
import itertools

import pytest

from ackbo.orders import OrderEngine, OrderId, params_valid
from ackbo.orient import enumerate_partial_precedences, orient_check, search, SearchConfig
from ackbo.smt import ConstraintProblem, decode_model, export_constraints
from ackbo.terms import (
    App,
    InvalidParamsError,
    OrderParams,
    Precedence,
    Rule,
    Signature,
    Symbol,
    Trs,
    WeightFn,
)
from helpers import SIG_AF, ground_demo_trs, ground_demo_reversed, ground_demo_params

EXPORT_IDS = (OrderId.ACKBO, OrderId.KV, OrderId.S, OrderId.KV_PRIME)


def _single_rule_trs():
    a, b = Symbol("a", 0), Symbol("b", 0)
    sig = Signature([a, b])
    return Trs(sig, (Rule(App(a), App(b)),))


def test_single_rule_emits_one_disjunction():
    prob = export_constraints(OrderId.ACKBO, _single_rule_trs())
    text = prob.to_smtlib()
    assert "(set-logic QF_LIA)" in text
    assert "(declare-fun w_a () Int)" in text
    assert "(declare-fun p_a_b () Bool)" in text
    assert "(check-sat)" in text
    # the rule itself: heavier, or equal weight and a above b
    rule_defs = [d for name, d in prob.defs if name.startswith("gt")]
    assert len(rule_defs) == 1
    smt = rule_defs[0].smt()
    assert "p_a_b" in smt and "(or" in smt


def test_export_rejects_unsupported_ids():
    with pytest.raises(InvalidParamsError):
        export_constraints(OrderId.ACRPO, _single_rule_trs())


def test_model_round_trip_through_decode():
    trs = ground_demo_trs()
    prob = export_constraints(OrderId.S, trs)
    params = ground_demo_params()
    model = prob.model_from_params(params)
    assert prob.evaluate(model)
    text = "\n".join(
        f"{name} {str(val).lower() if isinstance(val, bool) else val}"
        for name, val in model.items()
    )
    decoded = decode_model(prob, text)
    assert decoded.precedence == params.precedence
    assert decoded.weights.w == params.weights.w
    assert decoded.weights.w0 == params.weights.w0
    verdicts = orient_check(OrderId.S, decoded, trs)
    assert all(v.is_gt for v in verdicts)


def _weight_functions(max_w: int):
    for wf_f, wf_plus, wf_a, w0 in itertools.product(
        range(max_w + 1), range(max_w + 1), (1, 2), (1, 2)
    ):
        if wf_a < w0:
            continue
        yield WeightFn(SIG_AF, {"f": wf_f, "+": wf_plus, "a": wf_a}, w0)


@pytest.mark.parametrize("order_id", EXPORT_IDS)
@pytest.mark.parametrize("trs_name", ["r1", "r2"])
def test_encoding_matches_engines_exhaustively(order_id, trs_name):
    """The constraint problem is satisfied by exactly the parameter sets
    that orient the system, across every small precedence and weight
    vector.  Inadmissible or otherwise invalid parameters must falsify
    the axioms."""
    trs = ground_demo_trs() if trs_name == "r1" else ground_demo_reversed()
    prob = export_constraints(order_id, trs)
    sat_count = 0
    for prec in enumerate_partial_precedences(SIG_AF.names):
        for wf in _weight_functions(2):
            params = OrderParams(prec, wf)
            sat = prob.evaluate(prob.model_from_params(params))
            if not params_valid(order_id, params):
                assert not sat
                continue
            engine = OrderEngine(order_id, params)
            oriented = all(
                engine.compare(r.lhs, r.rhs).is_gt for r in trs.rules
            )
            assert oriented == sat, (prec, wf.w, wf.w0)
            sat_count += sat
    # which systems are orientable by which order mirrors the search
    expect_orientable = {
        ("r1", OrderId.S): True,
        ("r1", OrderId.ACKBO): True,
        ("r1", OrderId.KV): False,
        ("r1", OrderId.KV_PRIME): False,
        ("r2", OrderId.S): False,
        ("r2", OrderId.ACKBO): False,
        ("r2", OrderId.KV): True,
        ("r2", OrderId.KV_PRIME): True,
    }[(trs_name, order_id)]
    assert (sat_count > 0) == expect_orientable


def test_search_witness_satisfies_encoding():
    trs = ground_demo_reversed()
    res = search(OrderId.KV, trs, SearchConfig(precedence_mode="partial", max_weight=3))
    assert res.oriented
    prob = export_constraints(OrderId.KV, trs)
    assert prob.evaluate(prob.model_from_params(res.params))


@pytest.mark.skipif(
    importlib.util.find_spec("z3") is None, reason="no SMT solver installed"
)
def test_r1_kv_unsat_with_external_solver():  # pragma: no cover
    import z3

    solver = z3.Solver()
    solver.from_string(export_constraints(OrderId.KV, ground_demo_trs()).to_smtlib())
    assert solver.check() == z3.unsat
    solver = z3.Solver()
    solver.from_string(export_constraints(OrderId.KV, ground_demo_reversed()).to_smtlib())
    assert solver.check() == z3.sat
