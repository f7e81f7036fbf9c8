"""Generators for the NP-hardness constructions.

From a CNF formula these build:

  * a ground TRS orientable by KV iff the formula is satisfiable,
  * a ground TRS orientable by ACKBO iff the formula is satisfiable
    (the same system plus commutation rules pinning extra precedence), and
  * a term pair with fixed parameters that compares GT under KV_PRIME iff
    the formula is satisfiable.

A brute-force SAT oracle and the witness-parameter construction used in
the "satisfiable implies orientable" direction are included; both sides
are exercised against each other in the tests.

Symbol naming is fixed so generated systems are byte-stable: the AC symbol
is "+" (or "o" for the membership pair), "a"/"b" are the unary spine
symbols, "c" the base constant, "p<j>" the unary symbol of propositional
variable j, "d<i>" the constant of clause i, and "e<i>_<j>" the j-th
unary clause symbol of clause i.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .orders import OrderId
from .terms import (
    App,
    InvalidParamsError,
    OrderParams,
    Precedence,
    Rule,
    Signature,
    Symbol,
    Term,
    TermOrderError,
    Trs,
    Var,
    WeightFn,
)

Assignment = dict[int, bool]


class CnfError(TermOrderError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    """Clauses as sets of non-zero integers, DIMACS literal convention."""

    num_vars: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise CnfError("need at least one propositional variable")
        if not self.clauses:
            raise CnfError("empty formula")
        for cl in self.clauses:
            if not cl:
                raise CnfError("empty clause")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise CnfError(f"literal {lit} out of range")

    @classmethod
    def make(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(frozenset(c) for c in clauses))

    def satisfied_by(self, alpha: Assignment) -> bool:
        return all(
            any(alpha[abs(l)] == (l > 0) for l in cl) for cl in self.clauses
        )


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF: a `p cnf V C` header and 0-terminated clauses."""
    num_vars = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise CnfError(f"bad DIMACS header {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                if current:
                    clauses.append(current)
                    current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if num_vars is None:
        num_vars = max((abs(l) for cl in clauses for l in cl), default=0)
    return CnfFormula.make(num_vars, clauses)


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    for cl in phi.clauses:
        lines.append(" ".join(str(l) for l in sorted(cl, key=abs)) + " 0")
    return "\n".join(lines) + "\n"


def sat_bruteforce(phi: CnfFormula, max_vars: int = 20) -> Optional[Assignment]:
    """First satisfying assignment in lexicographic order (False before
    True, variable 1 outermost), or None."""
    if phi.num_vars > max_vars:
        raise CnfError(f"brute force limited to {max_vars} variables")
    for bits in itertools.product((False, True), repeat=phi.num_vars):
        alpha = {i + 1: b for i, b in enumerate(bits)}
        if phi.satisfied_by(alpha):
            return alpha
    return None


# --------------------------------------------------------------------------
# shared pieces of the two orientability encodings


@dataclass(frozen=True)
class _ClauseShape:
    index: int  # 1-based clause number
    pos: tuple[int, ...]  # positive literals, ascending variable index
    neg: tuple[int, ...]  # negated variables, ascending


def _shapes(phi: CnfFormula) -> list[_ClauseShape]:
    out = []
    for i, cl in enumerate(phi.clauses, start=1):
        pos = tuple(sorted(l for l in cl if l > 0))
        neg = tuple(sorted(-l for l in cl if l < 0))
        out.append(_ClauseShape(i, pos, neg))
    return out


class _Builder:
    def __init__(self, phi: CnfFormula):
        self.phi = phi
        self.shapes = _shapes(phi)
        symbols = [
            Symbol("+", 2, is_ac=True),
            Symbol("c", 0),
            Symbol("a", 1),
            Symbol("b", 1),
        ]
        symbols += [Symbol(f"p{j}", 1) for j in range(1, phi.num_vars + 1)]
        for sh in self.shapes:
            if sh.pos:
                symbols.append(Symbol(f"d{sh.index}", 0))
            for j in range(len(sh.neg) + 1):
                symbols.append(Symbol(f"e{sh.index}_{j}", 1))
        self.sig = Signature(symbols)

    def sym(self, name: str) -> Symbol:
        return self.sig.get(name)

    def un(self, name: str, arg: Term) -> Term:
        return App(self.sym(name), (arg,))

    def const(self, name: str) -> Term:
        return App(self.sym(name))

    def plus(self, items: Sequence[Term]) -> Term:
        acc = items[-1]
        for t in reversed(items[:-1]):
            acc = App(self.sym("+"), (t, acc))
        return acc

    # spine rules pinning a > + > b and the weight equalities

    def base_rules(self) -> list[Rule]:
        c = self.const("c")
        cc = self.plus([c, c])
        a, b = "a", "b"
        m = self.phi.num_vars
        rules = [
            Rule(self.un(a, cc), self.plus([self.un(a, c), c])),
            Rule(self.plus([self.un(b, c), c]), self.un(b, cc)),
            Rule(
                self.un(a, self.un(b, self.un(b, c))),
                self.un(b, self.un(a, self.un(a, c))),
            ),
        ]
        chain = [f"p{j}" for j in range(1, m + 1)] + ["a"]
        for cur, nxt in zip(chain, chain[1:]):
            rules.append(Rule(self.un(a, self.un(cur, c)), self.un(b, self.un(nxt, c))))
        rules.append(Rule(self.un(a, self.un(a, c)), self.un(b, self.un("p1", c))))
        return rules

    # per-clause rule with one balanced element on each side per literal

    def _e2(self, i: int, j: int, k: int) -> Term:
        return self.un(f"e{i}_{j}", self.un(f"e{i}_{k}", self.const("c")))

    def clause_rule(self, sh: _ClauseShape) -> Rule:
        c = self.const("c")
        lhs_elems: list[Term] = [self.un("b", self.un("b", self.plus([c, c])))]
        rhs_elems: list[Term] = [self.un("b", c), self.un("b", c)]
        di = f"d{sh.index}"
        for v in sh.pos:
            lhs_elems.append(self.un(f"p{v}", self.un("b", self.const(di))))
            rhs_elems.append(self.un("b", self.un(f"p{v}", self.const(di))))
        l = len(sh.neg)
        heads = ["a"] + [f"p{v}" for v in sh.neg]
        for j in range(l + 1):
            lhs_elems.append(self.un(heads[j], self._e2(sh.index, j, (j + 1) % (l + 1))))
            rhs_elems.append(self.un(heads[j], self._e2(sh.index, j, j)))
        return Rule(self.plus(lhs_elems), self.plus(rhs_elems))

    def commutation_rules(self) -> list[Rule]:
        c = self.const("c")
        rules = [
            Rule(
                self.un("a", self.un(f"p{j}", c)),
                self.un(f"p{j}", self.un("a", c)),
            )
            for j in range(1, self.phi.num_vars + 1)
        ]
        for sh in self.shapes:
            if sh.neg:
                e0, e1 = f"e{sh.index}_0", f"e{sh.index}_1"
                rules.append(Rule(self.un(e0, self.un(e1, c)), self.un(e1, self.un(e0, c))))
        return rules


def encode_kv_orientability(phi: CnfFormula) -> Trs:
    """Ground TRS orientable by KV iff phi is satisfiable; size linear in
    the size of phi."""
    b = _Builder(phi)
    rules = b.base_rules() + [b.clause_rule(sh) for sh in b.shapes]
    return Trs(b.sig, tuple(rules), name="kv-orientability")


def encode_ackbo_orientability(phi: CnfFormula) -> Trs:
    """Ground TRS orientable by ACKBO iff phi is satisfiable: the KV system
    plus commutation rules forcing a above every p<j> and e<i>_0 above
    e<i>_1."""
    b = _Builder(phi)
    rules = (
        b.base_rules() + b.commutation_rules() + [b.clause_rule(sh) for sh in b.shapes]
    )
    return Trs(b.sig, tuple(rules), name="ackbo-orientability")


def construct_witness(
    order_id: OrderId, phi: CnfFormula, alpha: Assignment
) -> OrderParams:
    """Parameters under which the generated TRS is fully oriented, derived
    from a satisfying assignment.

    Precedence: a > + > b, p<j> above + iff alpha(j); for ACKBO also
    a > p<j> and e<i>_0 > e<i>_1.  Weights: every unary spine symbol 1,
    the AC symbol 0, plus one adaptively enlarged weight per clause (the
    clause constant d<i> when a positive literal is satisfied, else the
    first falsified negative literal's e<i>_<j>).
    """
    if order_id not in (OrderId.KV, OrderId.ACKBO):
        raise InvalidParamsError(f"no witness construction for {order_id.value}")
    if set(alpha) != set(range(1, phi.num_vars + 1)):
        raise InvalidParamsError("assignment must cover every variable")
    if not phi.satisfied_by(alpha):
        raise InvalidParamsError("assignment does not satisfy the formula")
    b = _Builder(phi)
    w: dict[str, int] = {"+": 0, "c": 1, "a": 1, "b": 1}
    for j in range(1, phi.num_vars + 1):
        w[f"p{j}"] = 1
    for sh in b.shapes:
        if sh.pos:
            w[f"d{sh.index}"] = 1
        for j in range(len(sh.neg) + 1):
            w[f"e{sh.index}_{j}"] = 1
    pairs = [("a", "+"), ("+", "b")]
    for j in range(1, phi.num_vars + 1):
        pairs.append((f"p{j}", "+") if alpha[j] else ("+", f"p{j}"))
    if order_id is OrderId.ACKBO:
        for j in range(1, phi.num_vars + 1):
            pairs.append(("a", f"p{j}"))
        for sh in b.shapes:
            if sh.neg:
                pairs.append((f"e{sh.index}_0", f"e{sh.index}_1"))
    for sh in b.shapes:
        sat_pos = [v for v in sh.pos if alpha[v]]
        if sat_pos:
            emax = max(w[f"e{sh.index}_{j}"] for j in range(len(sh.neg) + 1))
            w[f"d{sh.index}"] = 1 + 2 * emax
        else:
            falsified = [
                j for j, v in enumerate(sh.neg, start=1) if not alpha[v]
            ]
            if not falsified:
                raise InvalidParamsError(f"clause {sh.index} unsatisfied")
            mstar = falsified[0]
            others = max(
                w[f"e{sh.index}_{j}"]
                for j in range(len(sh.neg) + 1)
                if j != mstar
            )
            w[f"e{sh.index}_{mstar}"] = 1 + 2 * others
    return OrderParams(Precedence(pairs), WeightFn(b.sig, w, 1))


# --------------------------------------------------------------------------
# membership instance for KV_PRIME


@dataclass(frozen=True)
class MembershipInstance:
    lhs: Term
    rhs: Term
    params: OrderParams


def encode_kvprime_membership(phi: CnfFormula) -> MembershipInstance:
    """Term pair with fixed parameters such that lhs compares GT to rhs
    under KV_PRIME iff phi is satisfiable.

    Both sides join their element lists with an AC symbol above the two
    balancing constants; the constants' weights are the smallest ones
    making the sides equally heavy.
    """
    n = phi.num_vars
    m = len(phi.clauses)
    o = Symbol("o", 2, is_ac=True)
    f = Symbol("f", m + 1)
    a = Symbol("a", 0)
    c = Symbol("c", 0)
    d = Symbol("d", 0)
    sig = Signature([o, f, a, c, d])

    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    ys = [Var(f"y{j}") for j in range(1, m + 1)]
    A = App(a)

    def selector(lit: int) -> list[Term]:
        return [
            ys[j] if lit in phi.clauses[j] else A for j in range(m)
        ]

    s_elems: list[Term] = []
    t_elems: list[Term] = []
    for i in range(1, n + 1):
        s_elems.append(App(f, tuple([xs[i - 1]] + selector(i))))
        s_elems.append(App(f, tuple([xs[i - 1]] + selector(-i))))
        t_elems.append(App(f, tuple([xs[i - 1]] + [A] * m)))
    t_elems += ys

    # balance: each f-term weighs m + 2, so lhs carries 2n of them plus c
    # while rhs carries n of them, the m variables, and two d's
    wd = max(1, -(-(1 + n * (m + 2) - m) // 2))
    wc = m + 2 * wd - n * (m + 2)
    w = {"o": 0, "f": 1, "a": 1, "c": wc, "d": wd}
    params = OrderParams(
        Precedence([("o", "c"), ("o", "d")]), WeightFn(sig, w, 1)
    )

    def comb(elems: Sequence[Term]) -> Term:
        acc = elems[-1]
        for t in reversed(elems[:-1]):
            acc = App(o, (t, acc))
        return acc

    lhs = comb(s_elems + [App(c)])
    rhs = comb(t_elems + [App(d), App(d)])
    return MembershipInstance(lhs, rhs, params)
