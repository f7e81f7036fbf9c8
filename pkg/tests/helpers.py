"""Shared fixtures: worked-example parameter sets, term universes, random
term generation, and independent brute-force oracles used to cross-check
the package's algorithms."""
from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Sequence

from ackbo.extensions import ExtVerdict
from ackbo.terms import (
    App,
    OrderParams,
    Precedence,
    Rule,
    Signature,
    Symbol,
    Term,
    Trs,
    Var,
    WeightFn,
    vars_of,
)
from ackbo.tpdb import parse_trs

# ---------------------------------------------------------------------------
# the running signature {a, b, f/1, +AC} and friends

SYM_A = Symbol("a", 0)
SYM_B = Symbol("b", 0)
SYM_C = Symbol("c", 0)
SYM_F = Symbol("f", 1)
SYM_G2 = Symbol("g", 2)
SYM_PLUS = Symbol("+", 2, is_ac=True)

SIG_AF = Signature([SYM_A, SYM_F, SYM_PLUS])
SIG_ABF = Signature([SYM_A, SYM_B, SYM_F, SYM_PLUS])

A = App(SYM_A)
B = App(SYM_B)
X, Y, Z = Var("x"), Var("y"), Var("z")


def F(t: Term) -> Term:
    return App(SYM_F, (t,))


def P(s: Term, t: Term) -> Term:
    return App(SYM_PLUS, (s, t))


# ---------------------------------------------------------------------------
# worked examples


def ground_demo_params() -> OrderParams:
    prec = Precedence([("f", "a"), ("a", "+"), ("f", "+")])
    wf = WeightFn(SIG_AF, {"f": 0, "+": 0, "a": 1}, 1)
    return OrderParams(prec, wf)


def ground_demo_trs() -> Trs:
    rule1 = Rule(F(P(A, A)), P(F(A), F(A)))
    rule2 = Rule(P(A, F(F(A))), P(F(A), F(A)))
    return Trs(SIG_AF, (rule1, rule2), name="R1")


def ground_demo_reversed() -> Trs:
    r1 = ground_demo_trs()
    return Trs(SIG_AF, (r1.rules[0], Rule(r1.rules[1].rhs, r1.rules[1].lhs)), name="R2")


def zero_unary_params() -> OrderParams:
    """Unary f of weight zero over {c, f, +}; admissibility forces f on top."""
    sig = Signature([SYM_C, SYM_F, SYM_PLUS])
    prec = Precedence([("f", "c"), ("f", "+")])
    return OrderParams(prec, WeightFn(sig, {"f": 0, "+": 0, "c": 1}, 1))


def positive_unary_params() -> OrderParams:
    """Binary g above the AC symbol, no zero-weight unary."""
    sig = Signature([SYM_C, SYM_F, SYM_G2, SYM_PLUS])
    prec = Precedence([("g", "+"), ("+", "c"), ("g", "c")])
    return OrderParams(prec, WeightFn(sig, {"f": 1, "g": 1, "+": 0, "c": 1}, 1))


SEVEN_RULE_TRS_TEXT = """
(VAR x y)
(THEORY (AC +))
(RULES
  f(x + y) -> f(x) + y
  g(x) + y -> g(x + y)
  f(a) + g(b) -> f(b) + g(a)
  h(a,b) -> h(b,a)
  h(a,g(g(a))) -> h(g(a),f(a))
  h(g(a),a) -> h(a,g(b))
  h(g(a),b) -> h(a,g(a))
)
"""


def seven_rule_trs() -> Trs:
    return parse_trs(SEVEN_RULE_TRS_TEXT, name="R3")


def seven_rule_params() -> OrderParams:
    trs = seven_rule_trs()
    prec = Precedence(
        [("f", "+"), ("+", "g"), ("g", "a"), ("a", "b"), ("b", "h")]
    )
    wf = WeightFn(
        trs.signature, {"+": 0, "h": 0, "f": 1, "a": 1, "b": 1, "g": 2}, 1
    )
    return OrderParams(prec, wf)


TWO_AC_TRS_TEXT = """
(VAR x)
(THEORY (AC ∘) (AC •))
(RULES
  a ∘ (b • c) -> b ∘ f(a • c)
  a • (b ∘ c) -> b • f(a ∘ c)
)
"""


def two_ac_trs() -> Trs:
    return parse_trs(TWO_AC_TRS_TEXT, name="two-ac")


def two_ac_params() -> OrderParams:
    trs = two_ac_trs()
    others = [n for n in trs.signature.names if n != "f"]
    prec = Precedence([("f", g) for g in others])
    wf = WeightFn(
        trs.signature, {"f": 0, "∘": 0, "•": 0, "a": 1, "c": 1, "b": 2}, 1
    )
    return OrderParams(prec, wf)


COEFF_TRS_TEXT = """
(VAR x y)
(THEORY (AC ∘))
(RULES
  f(0, x ∘ x) -> x
  f(x, s(y)) -> f(x ∘ y, 0)
  f(s(x), y) -> f(x ∘ y, 0)
  f(x ∘ y, 0) -> f(x, 0) ∘ f(y, 0)
)
"""


def coeff_trs() -> Trs:
    return parse_trs(COEFF_TRS_TEXT, name="interp")


def coeff_params() -> OrderParams:
    trs = coeff_trs()
    prec = Precedence([("f", "∘"), ("∘", "s"), ("s", "0"), ("f", "s"), ("f", "0"), ("∘", "0")])
    wf = WeightFn(
        trs.signature,
        {"f": 5, "∘": 3, "s": 6, "0": 1},
        1,
        sc={("f", 1): 4, ("f", 2): 4},
    )
    return OrderParams(prec, wf)


BINADD_TRS_TEXT = """
(VAR x y)
(THEORY (AC +))
(RULES
  0(#) -> #
  x + # -> x
  0(x) + 0(y) -> 0(x + y)
  0(x) + 1(y) -> 1(x + y)
  1(x) + 1(y) -> 0(x + (y + 1(#)))
)
"""


def binadd_trs() -> Trs:
    return parse_trs(BINADD_TRS_TEXT, name="binary-addition")


def binadd_params() -> OrderParams:
    trs = binadd_trs()
    wf = WeightFn(trs.signature, {"+": 0, "0": 1, "#": 1, "1": 3}, 1)
    return OrderParams(Precedence([]), wf)


# ---------------------------------------------------------------------------
# term universes and random generation


def universe(
    sig: Signature, max_size: int, var_names: Sequence[str] = ("x", "y")
) -> list[Term]:
    """All terms up to the given size over the signature (size counts
    symbol and variable occurrences)."""
    constants = [App(s) for s in sig.symbols if s.arity == 0]
    by_size: dict[int, list[Term]] = {1: [Var(v) for v in var_names] + constants}
    funcs = [s for s in sig.symbols if s.arity > 0]
    for n in range(2, max_size + 1):
        terms: list[Term] = []
        for sym in funcs:
            budget = n - 1
            for split in _compositions(budget, sym.arity):
                if any(k < 1 for k in split):
                    continue
                for args in itertools.product(
                    *(by_size.get(k, ()) for k in split)
                ):
                    terms.append(App(sym, args))
        by_size[n] = terms
    return [t for n in range(1, max_size + 1) for t in by_size[n]]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def random_term(
    rng: random.Random,
    sig: Signature,
    var_names: Sequence[str] = ("x", "y", "z"),
    max_depth: int = 4,
) -> Term:
    syms = list(sig.symbols)
    leaves = [s for s in syms if s.arity == 0]
    if max_depth <= 1 or rng.random() < 0.35:
        if var_names and rng.random() < 0.5:
            return Var(rng.choice(list(var_names)))
        if leaves:
            return App(rng.choice(leaves))
        return Var(rng.choice(list(var_names)))
    sym = rng.choice(syms)
    if sym.arity == 0:
        return App(sym)
    return App(
        sym,
        tuple(
            random_term(rng, sig, var_names, max_depth - 1)
            for _ in range(sym.arity)
        ),
    )


def ac_shuffle(rng: random.Random, t: Term) -> Term:
    """A random member of t's AC-equivalence class."""
    if isinstance(t, Var):
        return t
    if t.sym.is_ac:
        elems = []
        stack = [t]
        while stack:
            u = stack.pop()
            if isinstance(u, App) and u.sym == t.sym:
                stack.extend(u.args)
            else:
                elems.append(ac_shuffle(rng, u))
        rng.shuffle(elems)
        acc = elems[0]
        for e in elems[1:]:
            acc = App(t.sym, (acc, e) if rng.random() < 0.5 else (e, acc))
        return acc
    return App(t.sym, tuple(ac_shuffle(rng, a) for a in t.args))


# ---------------------------------------------------------------------------
# independent oracles


def ac_equal_oracle(s: Term, t: Term) -> bool:
    """AC equality by backtracking over bijections of flattened arguments;
    independent of the sorting-based canonical form."""
    if isinstance(s, Var) or isinstance(t, Var):
        return s == t
    if s.sym != t.sym:
        return False
    if s.sym.is_ac:
        return _match_multisets(_flatten(s.sym, s), _flatten(t.sym, t))
    return all(ac_equal_oracle(a, b) for a, b in zip(s.args, t.args))


def _flatten(sym: Symbol, t: Term) -> list[Term]:
    out: list[Term] = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App) and u.sym == sym:
            stack.extend(u.args)
        else:
            out.append(u)
    return out


def _match_multisets(ms: list[Term], ns: list[Term]) -> bool:
    if len(ms) != len(ns):
        return False
    if not ms:
        return True
    first, rest = ms[0], ms[1:]
    for j, cand in enumerate(ns):
        if ac_equal_oracle(first, cand):
            if _match_multisets(rest, ns[:j] + ns[j + 1 :]):
                return True
    return False


def bruteforce_lex(geq, gt, xs: Sequence[Term], ys: Sequence[Term]) -> ExtVerdict:
    """Direct transcription of the lexicographic extension: quantify over
    the prefix length."""
    n = len(xs)
    best = ExtVerdict.NONE
    for k in range(n + 1):
        if not all(geq(xs[i], ys[i]) for i in range(k)):
            continue
        if k < n and gt(xs[k], ys[k]):
            return ExtVerdict.STRICT
        if k == n:
            best = max(best, ExtVerdict.WEAK)
    return best


def bruteforce_mul(geq, gt, M: Sequence[Term], N: Sequence[Term]) -> ExtVerdict:
    """Direct transcription of the multiset extension: quantify over all
    orderings of both multisets and the pairing length k."""
    m, n = len(M), len(N)
    best = ExtVerdict.NONE
    for Mp in set(itertools.permutations(M)):
        for Np in set(itertools.permutations(N)):
            for k in range(min(m, n) + 1):
                if not all(geq(Mp[j], Np[j]) for j in range(k)):
                    continue
                if not all(
                    any(gt(Mp[i], Np[j]) for i in range(k, m))
                    for j in range(k, n)
                ):
                    continue
                if k <= min(m - 1, n):
                    return ExtVerdict.STRICT
                best = max(best, ExtVerdict.WEAK)
    return best


def eval_weight(t: Term, wf: WeightFn, assign: dict[str, int]) -> int:
    """Weight of t with explicit integer values for the variables."""
    if isinstance(t, Var):
        return assign[t.name]
    acc = wf.weight_of(t.sym)
    for i, arg in enumerate(t.args, start=1):
        acc += wf.coeff(t.sym, i) * eval_weight(arg, wf, assign)
    return acc


def vc_oracle(x: str, t: Term, wf: WeightFn) -> int:
    """Variable coefficient by finite differences on the weight polynomial."""
    assign = {v: wf.w0 for v in vars_of(t)}
    assign.setdefault(x, wf.w0)
    lo = eval_weight(t, wf, assign)
    assign[x] += 1
    hi = eval_weight(t, wf, assign)
    return hi - lo
