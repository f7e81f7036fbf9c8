import itertools
import random

import pytest

from ackbo.orders import OrderEngine, OrderId, Relation
from ackbo.orient import orient_check
from ackbo.reductions import (
    Assignment,
    CnfError,
    CnfFormula,
    construct_witness,
    encode_ackbo_orientability,
    encode_kv_orientability,
    encode_kvprime_membership,
    format_dimacs,
    parse_dimacs,
    sat_bruteforce,
)
from ackbo.terms import (
    App,
    InvalidParamsError,
    Symbol,
    Var,
    format_term,
    subterms,
    vars_of,
    weight,
)
from ackbo.tpdb import print_trs


def test_cnf_validation():
    with pytest.raises(CnfError):
        CnfFormula.make(0, [[1]])
    with pytest.raises(CnfError):
        CnfFormula.make(1, [])
    with pytest.raises(CnfError):
        CnfFormula.make(1, [[]])
    with pytest.raises(CnfError):
        CnfFormula.make(1, [[2]])
    with pytest.raises(CnfError):
        CnfFormula.make(1, [[0]])


def test_dimacs_round_trip():
    text = "c a comment\np cnf 3 2\n1 -2 0\n2 3 -1 0\n"
    phi = parse_dimacs(text)
    assert phi.num_vars == 3
    assert phi.clauses == (frozenset({1, -2}), frozenset({2, 3, -1}))
    again = parse_dimacs(format_dimacs(phi))
    assert again == phi


def test_sat_bruteforce_basics():
    assert sat_bruteforce(CnfFormula.make(1, [[1]])) == {1: True}
    assert sat_bruteforce(CnfFormula.make(1, [[1], [-1]])) is None
    with pytest.raises(CnfError):
        sat_bruteforce(CnfFormula.make(21, [[1]]))


def _eval_bitmask(phi: CnfFormula) -> bool:
    # independent satisfiability check over bitmask assignments
    for mask in range(1 << phi.num_vars):
        ok = True
        for cl in phi.clauses:
            if not any(
                (mask >> (abs(l) - 1) & 1) == (l > 0) for l in cl
            ):
                ok = False
                break
        if ok:
            return True
    return False


def test_sat_bruteforce_agrees_with_bitmask_oracle():
    rng = random.Random(71)
    for _ in range(150):
        n = rng.randrange(1, 5)
        clauses = []
        for _ in range(rng.randrange(1, 5)):
            size = rng.randrange(1, min(3, n) + 1)
            chosen = rng.sample(range(1, n + 1), size)
            clauses.append(
                {v if rng.random() < 0.5 else -v for v in chosen}
            )
        phi = CnfFormula.make(n, clauses)
        found = sat_bruteforce(phi)
        assert (found is not None) == _eval_bitmask(phi)
        if found is not None:
            assert phi.satisfied_by(found)


def test_clause_rule_matches_worked_shape():
    # clause {x, not y, not z}: one positive tower and a cyclic/diagonal
    # pair of towers per negative literal
    phi = CnfFormula.make(3, [[1, -2, -3]])
    trs = encode_kv_orientability(phi)
    rule = trs.rules[-1]
    lhs, rhs = format_term(rule.lhs), format_term(rule.rhs)
    assert lhs == (
        "b(b(c + c)) + (p1(b(d1)) + (a(e1_0(e1_1(c))) + "
        "(p2(e1_1(e1_2(c))) + p3(e1_2(e1_0(c))))))"
    )
    assert rhs == (
        "b(c) + (b(c) + (b(p1(d1)) + (a(e1_0(e1_0(c))) + "
        "(p2(e1_1(e1_1(c))) + p3(e1_2(e1_2(c)))))))"
    )


def test_generated_rules_balance_under_base_constraints():
    # any weight function with equal a/b/p weights makes both sides of
    # every rule equally heavy
    rng = random.Random(73)
    phi = CnfFormula.make(3, [[1, -2], [-1, 2, 3], [2]])
    trs = encode_kv_orientability(phi)
    from ackbo.terms import WeightFn

    for _ in range(20):
        shared = rng.randrange(0, 4)
        w = {}
        for sym in trs.signature:
            if sym.name in ("a", "b") or sym.name.startswith("p"):
                w[sym.name] = shared
            elif sym.arity == 0:
                w[sym.name] = rng.randrange(1, 5)
            else:
                w[sym.name] = rng.randrange(0, 5)
        w0 = 1
        if any(sym.arity == 0 and w[sym.name] < w0 for sym in trs.signature):
            continue
        wf = WeightFn(trs.signature, w, w0)
        for rule in trs.rules:
            assert weight(rule.lhs, wf) == weight(rule.rhs, wf), rule


def test_encoded_trs_size_is_linear():
    sizes = []
    for n_clauses in (1, 2, 3):
        phi = CnfFormula.make(
            3, [[1, -2, 3]] * 1 + [[-1, 2]] * (n_clauses - 1)
        )
        trs = encode_kv_orientability(phi)
        total = sum(
            len(list(subterms(r.lhs))) + len(list(subterms(r.rhs)))
            for r in trs.rules
        )
        sizes.append(total)
    assert sizes[1] - sizes[0] == sizes[2] - sizes[1]  # constant growth per clause


def test_encoder_is_deterministic():
    phi = CnfFormula.make(2, [[1, -2], [2]])
    a = print_trs(encode_kv_orientability(phi))
    b = print_trs(encode_kv_orientability(phi))
    assert a == b
    assert print_trs(encode_ackbo_orientability(phi)) == print_trs(
        encode_ackbo_orientability(phi)
    )


def test_ackbo_variant_adds_commutation_rules():
    phi = CnfFormula.make(2, [[-1, 2], [1]])
    kv = encode_kv_orientability(phi)
    ack = encode_ackbo_orientability(phi)
    extra = len(ack.rules) - len(kv.rules)
    # one commutation rule per variable plus one swap per negative clause
    assert extra == 2 + 1
    texts = [str(r) for r in ack.rules]
    assert "e1_0(e1_1(c)) -> e1_1(e1_0(c))" in texts
    assert "a(p1(c)) -> p1(a(c))" in texts
    assert "a(p2(c)) -> p2(a(c))" in texts


def test_witness_orients_generated_systems():
    phi = CnfFormula.make(3, [[1, -2], [-1, 3], [2, 3]])
    alpha = sat_bruteforce(phi)
    assert alpha is not None
    for oid, encoder in (
        (OrderId.KV, encode_kv_orientability),
        (OrderId.ACKBO, encode_ackbo_orientability),
    ):
        trs = encoder(phi)
        params = construct_witness(oid, phi, alpha)
        verdicts = orient_check(oid, params, trs)
        assert all(v.is_gt for v in verdicts), oid


def test_witness_base_constraints():
    phi = CnfFormula.make(2, [[1], [-2, 1]])
    alpha = {1: True, 2: False}
    params = construct_witness(OrderId.KV, phi, alpha)
    p, w = params.precedence, params.weights
    assert p.gt("a", "+") and p.gt("+", "b")
    assert w.w["a"] == w.w["b"] == w.w["p1"] == w.w["p2"]
    assert p.gt("p1", "+") and p.gt("+", "p2")
    ack = construct_witness(OrderId.ACKBO, phi, alpha)
    assert ack.precedence.gt("a", "p1") and ack.precedence.gt("a", "p2")
    assert ack.precedence.gt("e2_0", "e2_1")


def test_witness_rejects_bad_assignments():
    phi = CnfFormula.make(1, [[1]])
    with pytest.raises(InvalidParamsError):
        construct_witness(OrderId.KV, phi, {1: False})
    with pytest.raises(InvalidParamsError):
        construct_witness(OrderId.KV, phi, {})
    with pytest.raises(InvalidParamsError):
        construct_witness(OrderId.S, phi, {1: True})


def test_membership_weight_balance_and_iff_samples():
    cases = [
        ([[1]], True),
        ([[1], [-1]], False),
        ([[1, 2], [-1, -2]], True),
        ([[1], [-1], [2]], False),
        ([[1, -2], [2], [-1]], False),
        ([[-1, -2, -3]], True),
    ]
    for clauses, expect_sat in cases:
        n = max(abs(l) for cl in clauses for l in cl)
        phi = CnfFormula.make(n, clauses)
        inst = encode_kvprime_membership(phi)
        wf = inst.params.weights
        assert weight(inst.lhs, wf) == weight(inst.rhs, wf)
        assert wf.w["c"] >= 1 and wf.w["d"] >= 1
        engine = OrderEngine(OrderId.KV_PRIME, inst.params)
        got = engine.compare(inst.lhs, inst.rhs)
        assert got.is_gt == expect_sat, clauses
        assert (sat_bruteforce(phi) is not None) == expect_sat


def test_membership_variable_condition_by_construction():
    phi = CnfFormula.make(2, [[1, -2], [2]])
    inst = encode_kvprime_membership(phi)
    lv, rv = vars_of(inst.lhs), vars_of(inst.rhs)
    assert all(lv[x] >= n for x, n in rv.items())
