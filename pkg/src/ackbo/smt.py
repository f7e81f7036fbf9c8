"""Orientability as quantifier-free linear integer arithmetic.

For the weight-based orders the existence of orienting parameters can be
phrased with one Boolean per precedence pair, one Boolean per case
selector, and one integer per symbol weight plus w0.  The recursive order
definitions are unrolled exactly: recursion only ever descends into strict
subterms or submultisets, so the unrolling is finite, and the multiset
comparisons are expanded into finite disjunctions over pairings, with
covering conditions kept as plain disjunctions.

The resulting problem is both serializable as SMT-LIB 2 (logic QF_LIA)
and directly evaluable under a candidate model, which is how the encoding
is cross-checked against the comparison engines without shipping a solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .orders import OrderId
from .terms import (
    App,
    InvalidParamsError,
    OrderParams,
    Precedence,
    Signature,
    Term,
    Trs,
    Var,
    WeightFn,
    ac_canonical,
    ac_equal,
    term_key,
    top_flatten,
    vars_of,
)

_EXPORT_IDS = (OrderId.ACKBO, OrderId.KV, OrderId.S, OrderId.KV_PRIME)


# --------------------------------------------------------------------------
# linear expressions and boolean formulas


@dataclass(frozen=True)
class Lin:
    """const + sum(coeff * int-var)."""

    const: int = 0
    coeffs: tuple[tuple[str, int], ...] = ()

    @classmethod
    def make(cls, const: int, coeffs: Mapping[str, int]) -> "Lin":
        return cls(const, tuple(sorted((v, c) for v, c in coeffs.items() if c)))

    def __sub__(self, other: "Lin") -> "Lin":
        d = dict(self.coeffs)
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) - c
        return Lin.make(self.const - other.const, d)

    def evaluate(self, env: Mapping[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.coeffs)

    def smt(self) -> str:
        parts = [str(self.const)] if self.const or not self.coeffs else []
        for v, c in self.coeffs:
            if c == 1:
                parts.append(v)
            else:
                parts.append(f"(* {c} {v})")
        if not parts:
            return "0"
        if len(parts) == 1:
            return parts[0]
        return f"(+ {' '.join(parts)})"


class BE:
    """Boolean expression node."""

    def evaluate(self, env) -> bool:
        raise NotImplementedError

    def smt(self) -> str:
        raise NotImplementedError


class _Const(BE):
    def __init__(self, v: bool):
        self.v = v

    def evaluate(self, env) -> bool:
        return self.v

    def smt(self) -> str:
        return "true" if self.v else "false"


TRUE = _Const(True)
FALSE = _Const(False)


class BVar(BE):
    def __init__(self, name: str):
        self.name = name

    def evaluate(self, env) -> bool:
        return bool(env[self.name])

    def smt(self) -> str:
        return self.name


class Not(BE):
    def __init__(self, e: BE):
        self.e = e

    def evaluate(self, env) -> bool:
        return not self.e.evaluate(env)

    def smt(self) -> str:
        return f"(not {self.e.smt()})"


class And(BE):
    def __init__(self, items: Sequence[BE]):
        self.items = tuple(items)

    def evaluate(self, env) -> bool:
        return all(e.evaluate(env) for e in self.items)

    def smt(self) -> str:
        return f"(and {' '.join(e.smt() for e in self.items)})"


class Or(BE):
    def __init__(self, items: Sequence[BE]):
        self.items = tuple(items)

    def evaluate(self, env) -> bool:
        return any(e.evaluate(env) for e in self.items)

    def smt(self) -> str:
        return f"(or {' '.join(e.smt() for e in self.items)})"


class Cmp(BE):
    """lin OP 0 with OP in >=, >, =."""

    def __init__(self, op: str, lin: Lin):
        self.op = op
        self.lin = lin

    def evaluate(self, env) -> bool:
        v = self.lin.evaluate(env)
        return v >= 0 if self.op == ">=" else v > 0 if self.op == ">" else v == 0

    def smt(self) -> str:
        return f"({self.op} {self.lin.smt()} 0)"


def band(items: Iterable[BE]) -> BE:
    out = []
    for e in items:
        if e is FALSE:
            return FALSE
        if isinstance(e, And):
            out.extend(e.items)
        elif e is not TRUE:
            out.append(e)
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(out)


def bor(items: Iterable[BE]) -> BE:
    out = []
    for e in items:
        if e is TRUE:
            return TRUE
        if isinstance(e, Or):
            out.extend(e.items)
        elif e is not FALSE:
            out.append(e)
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(out)


def bnot(e: BE) -> BE:
    if e is TRUE:
        return FALSE
    if e is FALSE:
        return TRUE
    return Not(e)


# --------------------------------------------------------------------------
# the constraint problem


def _sanitize(name: str) -> str:
    out = []
    for ch in name:
        if ch.isalnum() or ch == "_":
            out.append(ch)
        else:
            out.append(f"x{ord(ch):x}")
    return "".join(out)


@dataclass
class ConstraintProblem:
    """Variables, selector definitions and assertions of one export."""

    order_id: OrderId
    signature: Signature
    int_vars: list[str] = field(default_factory=list)
    bool_vars: list[str] = field(default_factory=list)
    defs: list[tuple[str, BE]] = field(default_factory=list)
    assertions: list[BE] = field(default_factory=list)
    weight_var: dict[str, str] = field(default_factory=dict)
    prec_var: dict[tuple[str, str], str] = field(default_factory=dict)

    def to_smtlib(self) -> str:
        lines = [
            f"; orientability of a TRS under order {self.order_id.value}",
            "(set-logic QF_LIA)",
        ]
        for v in self.int_vars:
            lines.append(f"(declare-fun {v} () Int)")
        for v in self.bool_vars:
            lines.append(f"(declare-fun {v} () Bool)")
        for name, e in self.defs:
            lines.append(f"(declare-fun {name} () Bool)")
            lines.append(f"(assert (= {name} {e.smt()}))")
        for e in self.assertions:
            lines.append(f"(assert {e.smt()})")
        lines.append("(check-sat)")
        lines.append("(get-model)")
        return "\n".join(lines) + "\n"

    def evaluate(self, model: Mapping[str, int | bool]) -> bool:
        """True iff the model (for base variables) satisfies every assertion,
        with selector definitions computed along the way."""
        env: dict[str, int | bool] = dict(model)
        for name, e in self.defs:
            env[name] = e.evaluate(env)
        return all(e.evaluate(env) for e in self.assertions)

    def model_from_params(self, params: OrderParams) -> dict[str, int | bool]:
        env: dict[str, int | bool] = {"w0": params.weights.w0}
        for name, v in self.weight_var.items():
            env[v] = params.weights.w[name]
        for (f, g), v in self.prec_var.items():
            env[v] = params.precedence.gt(f, g)
        return env


def decode_model(problem: ConstraintProblem, text: str) -> OrderParams:
    """Rebuild order parameters from a simple `name value` model text.

    Booleans are true/false (or 0/1); unknown names are ignored; missing
    precedence variables default to false and missing weights to 0/1.
    """
    values: dict[str, int | bool] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith((";", "#", "(")):
            continue
        parts = line.split()
        if len(parts) != 2:
            continue
        name, val = parts
        if val.lower() in ("true", "false"):
            values[name] = val.lower() == "true"
        else:
            try:
                values[name] = int(val)
            except ValueError:
                continue
    pairs = [fg for fg, v in problem.prec_var.items() if values.get(v)]
    w0 = int(values.get("w0", 1))
    w = {
        name: int(values[v])
        for name, v in problem.weight_var.items()
        if v in values
    }
    return OrderParams(
        Precedence(pairs), WeightFn(problem.signature, w, w0, default=w0)
    )


# --------------------------------------------------------------------------
# encoder


def _pairings(
    n_left: int, candidates: Sequence[Sequence[int]]
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Injective partial matchings: for each right index j either skip it or
    pair it with an unused left index from candidates[j]."""

    def rec(j: int, used: frozenset[int]):
        if j == len(candidates):
            yield ()
            return
        for rest in rec(j + 1, used):
            yield rest
        for i in candidates[j]:
            if i in used:
                continue
            for rest in rec(j + 1, used | {i}):
                yield ((i, j),) + rest

    return rec(0, frozenset())


class _Encoder:
    def __init__(self, order_id: OrderId, trs: Trs):
        if order_id not in _EXPORT_IDS:
            raise InvalidParamsError(
                f"constraint export supports {[o.value for o in _EXPORT_IDS]}, "
                f"not {order_id.value}"
            )
        self.order_id = order_id
        self.trs = trs
        self.sig = trs.signature
        self.prob = ConstraintProblem(order_id, trs.signature)
        self._wlin_cache: dict[Term, Lin] = {}
        self._gt_cache: dict[tuple[Term, Term], BE] = {}
        self._nsel = 0
        self._declare_vars()

    # -- variables -------------------------------------------------------

    def _declare_vars(self) -> None:
        p = self.prob
        p.int_vars.append("w0")
        for name in self.sig.names:
            v = f"w_{_sanitize(name)}"
            p.weight_var[name] = v
            p.int_vars.append(v)
        for f in self.sig.names:
            for g in self.sig.names:
                if f != g:
                    v = f"p_{_sanitize(f)}_{_sanitize(g)}"
                    p.prec_var[(f, g)] = v
                    p.bool_vars.append(v)

    def prec(self, f: str, g: str) -> BE:
        if f == g:
            return FALSE
        return BVar(self.prob.prec_var[(f, g)])

    def _define(self, prefix: str, e: BE) -> BE:
        if e is TRUE or e is FALSE or isinstance(e, (BVar, Not, Cmp)):
            return e
        name = f"{prefix}{self._nsel}"
        self._nsel += 1
        self.prob.defs.append((name, e))
        return BVar(name)

    # -- weights -----------------------------------------------------------

    def wlin(self, t: Term) -> Lin:
        hit = self._wlin_cache.get(t)
        if hit is None:
            if isinstance(t, Var):
                hit = Lin.make(0, {"w0": 1})
            else:
                coeffs: dict[str, int] = {}
                stack = [t]
                while stack:
                    u = stack.pop()
                    if isinstance(u, Var):
                        coeffs["w0"] = coeffs.get("w0", 0) + 1
                    else:
                        v = self.prob.weight_var[u.sym.name]
                        coeffs[v] = coeffs.get(v, 0) + 1
                        stack.extend(u.args)
                hit = Lin.make(0, coeffs)
            self._wlin_cache[t] = hit
        return hit

    def w_cmp(self, op: str, a: Term, b: Term) -> BE:
        d = self.wlin(a) - self.wlin(b)
        if not d.coeffs:
            return TRUE if Cmp(op, d).evaluate({}) else FALSE
        return Cmp(op, d)

    # -- auxiliary relations ------------------------------------------------

    @staticmethod
    def _var_cond(s: Term, t: Term) -> bool:
        cs, ct = vars_of(s), vars_of(t)
        return all(cs[x] >= n for x, n in ct.items())

    def wroot_gt(self, a: Term, b: Term) -> BE:
        if not self._var_cond(a, b):
            return FALSE
        by_weight = self.w_cmp(">", a, b)
        if isinstance(a, App) and isinstance(b, App) and a.sym != b.sym:
            by_root = band(
                [self.w_cmp("=", a, b), self.prec(a.sym.name, b.sym.name)]
            )
        else:
            by_root = FALSE
        return bor([by_weight, by_root])

    def wroot_eq(self, a: Term, b: Term) -> BE:
        if not (isinstance(a, App) and isinstance(b, App)):
            return FALSE
        if a.sym != b.sym or vars_of(a) != vars_of(b):
            return FALSE
        return self.w_cmp("=", a, b)

    def kvp_geq(self, a: Term, b: Term) -> BE:
        if not self._var_cond(a, b):
            return FALSE
        if isinstance(b, Var):
            root_ok: BE = TRUE
        elif isinstance(a, Var):
            root_ok = FALSE
        elif a.sym == b.sym:
            root_ok = TRUE
        else:
            root_ok = self.prec(a.sym.name, b.sym.name)
        return bor(
            [self.w_cmp(">", a, b), band([self.w_cmp("=", a, b), root_ok])]
        )

    # -- multiset machinery ---------------------------------------------------

    def _matchings(
        self,
        M: Sequence[Term],
        N: Sequence[Term],
        geq_f,
        gt_f,
        *,
        strict: bool,
        bijective: bool = False,
    ) -> BE:
        """Disjunction over pairings of: pair conditions plus covering of the
        unpaired right elements by the unpaired left elements."""
        geq_mat = [[geq_f(m, n) for n in N] for m in M]
        gt_mat = [[gt_f(m, n) for n in N] for m in M]
        if bijective and len(M) != len(N):
            return FALSE
        candidates = [
            [i for i in range(len(M)) if geq_mat[i][j] is not FALSE]
            for j in range(len(N))
        ]
        options: list[BE] = []
        for pairing in _pairings(len(M), candidates):
            matched_n = {j for _, j in pairing}
            matched_m = {i for i, _ in pairing}
            if bijective and len(pairing) != len(N):
                continue
            if strict and len(matched_m) == len(M):
                continue
            rest_m = [i for i in range(len(M)) if i not in matched_m]
            conj: list[BE] = [geq_mat[i][j] for i, j in pairing]
            ok = True
            for j in range(len(N)):
                if j in matched_n:
                    continue
                cover = bor([gt_mat[i][j] for i in rest_m])
                if cover is FALSE:
                    ok = False
                    break
                conj.append(cover)
            if ok:
                options.append(band(conj))
        return bor(options)

    # -- the order cases ---------------------------------------------------

    def gt_ref(self, s: Term, t: Term) -> BE:
        key = (s, t)
        hit = self._gt_cache.get(key)
        if hit is None:
            hit = self._define("gt", self._gt_expr(s, t))
            self._gt_cache[key] = hit
        return hit

    def _gt_expr(self, s: Term, t: Term) -> BE:
        if not self._var_cond(s, t):
            return FALSE
        by_weight = self.w_cmp(">", s, t)
        w_eq = self.w_cmp("=", s, t)
        if w_eq is FALSE:
            return by_weight
        cases = self._cases(s, t)
        return bor([by_weight, band([w_eq, cases])])

    def _cases(self, s: Term, t: Term) -> BE:
        from .orders import _case0

        if isinstance(t, Var):
            return TRUE if _case0(s, t) else FALSE
        if isinstance(s, Var):
            return FALSE
        f, g = s.sym, t.sym
        if f != g:
            return self.prec(f.name, g.name)
        if not f.is_ac:
            return self._lex(s.args, t.args)
        return self._ac_case(f, s, t)

    def _lex(self, xs: Sequence[Term], ys: Sequence[Term]) -> BE:
        n = len(xs)
        r = 0
        while r < n and ac_equal(xs[r], ys[r]):
            r += 1
        return bor([self.gt_ref(xs[p], ys[p]) for p in range(min(r + 1, n))])

    def _ac_case(self, f, s: Term, t: Term) -> BE:
        S = top_flatten(f, s)
        T = top_flatten(f, t)
        if self.order_id is OrderId.S:
            # whole flattenings, no precedence-dependent restriction
            return self._matchings(
                S, T, self._static_ac, lambda a, b: self.gt_ref(a, b), strict=True
            )
        SV = [u for u in S if isinstance(u, Var)]
        TV = [u for u in T if isinstance(u, Var)]
        s_nonvar = [u for u in S if isinstance(u, App)]
        t_nonvar = [u for u in T if isinstance(u, App)]
        leftover = list(TV)
        for x in SV:
            if x in leftover:
                leftover.remove(x)
        roots = sorted({u.sym.name for u in s_nonvar + t_nonvar})
        options: list[BE] = []
        for bits in range(1 << len(roots)):
            below = {r for k, r in enumerate(roots) if bits >> k & 1}
            cond = band(
                [
                    self.prec(f.name, r) if r in below else bnot(self.prec(f.name, r))
                    for r in roots
                ]
            )
            if cond is FALSE:
                continue
            Sn = [u for u in s_nonvar if u.sym.name not in below]
            rhs = [u for u in t_nonvar if u.sym.name not in below] + leftover
            Sl = [u for u in s_nonvar if u.sym.name in below]
            Tl = [u for u in t_nonvar if u.sym.name in below]
            sub = self._ac_subcases(S, T, Sn, rhs, Sl, Tl)
            if sub is not FALSE:
                options.append(band([cond, sub]))
        return bor(options)

    @staticmethod
    def _static_ac(a: Term, b: Term) -> BE:
        return TRUE if ac_equal(a, b) else FALSE

    def _ac_subcases(self, S, T, Sn, rhs, Sl, Tl) -> BE:
        gt = lambda a, b: self.gt_ref(a, b)
        oid = self.order_id
        out: list[BE] = []
        if oid is OrderId.ACKBO:
            out.append(self._matchings(Sn, rhs, self._static_ac, gt, strict=True))
            if self._ms_ac_equal(Sn, rhs):
                if len(S) > len(T):
                    out.append(TRUE)
                elif len(S) == len(T):
                    out.append(self._matchings(Sl, Tl, self._static_ac, gt, strict=True))
        elif oid is OrderId.KV:
            out.append(
                self._matchings(Sn, rhs, self.wroot_eq, self.wroot_gt, strict=True)
            )
            precond = self._matchings(
                Sn, rhs, self.wroot_eq, self.wroot_gt, strict=False, bijective=True
            )
            if precond is not FALSE:
                if len(S) > len(T):
                    out.append(precond)
                elif len(S) == len(T):
                    out.append(
                        band(
                            [
                                precond,
                                self._matchings(
                                    S, T, self._static_ac, gt, strict=True
                                ),
                            ]
                        )
                    )
        elif oid is OrderId.KV_PRIME:
            out.append(
                self._matchings(Sn, rhs, self.kvp_geq, self.wroot_gt, strict=True)
            )
            weak = self._matchings(Sn, rhs, self.kvp_geq, self.wroot_gt, strict=False)
            if weak is not FALSE:
                if len(S) > len(T):
                    out.append(weak)
                elif len(S) == len(T):
                    out.append(
                        band(
                            [
                                weak,
                                self._matchings(
                                    S, T, self._static_ac, gt, strict=True
                                ),
                            ]
                        )
                    )
        return bor(out)

    @staticmethod
    def _ms_ac_equal(ms: Sequence[Term], ns: Sequence[Term]) -> bool:
        if len(ms) != len(ns):
            return False
        return sorted(map(term_key, map(ac_canonical, ms))) == sorted(
            map(term_key, map(ac_canonical, ns))
        )

    # -- axioms and rules ------------------------------------------------------

    def _axioms(self) -> None:
        p = self.prob
        add = p.assertions.append
        add(Cmp(">=", Lin.make(-1, {"w0": 1})))
        for name in self.sig.names:
            wv = p.weight_var[name]
            add(Cmp(">=", Lin.make(0, {wv: 1})))
            if self.sig.get(name).arity == 0:
                add(Cmp(">=", Lin.make(0, {wv: 1, "w0": -1})))
        names = self.sig.names
        for f in names:
            for g in names:
                if f < g:
                    add(bor([bnot(self.prec(f, g)), bnot(self.prec(g, f))]))
        for f in names:
            for g in names:
                for h in names:
                    if len({f, g, h}) == 3:
                        add(
                            bor(
                                [
                                    bnot(self.prec(f, g)),
                                    bnot(self.prec(g, h)),
                                    self.prec(f, h),
                                ]
                            )
                        )
        # admissibility: a zero-weight unary symbol sits above everything
        for name in names:
            if self.sig.get(name).arity == 1:
                wv = p.weight_var[name]
                add(
                    bor(
                        [
                            Cmp(">", Lin.make(0, {wv: 1})),
                            band([self.prec(name, g) for g in names if g != name]),
                        ]
                    )
                )
        if self.order_id is OrderId.S:
            for name in self.sig.ac_names:
                for g in names:
                    if g != name:
                        add(bnot(self.prec(name, g)))

    def build(self) -> ConstraintProblem:
        self._axioms()
        for rule in self.trs.rules:
            self.prob.assertions.append(self.gt_ref(rule.lhs, rule.rhs))
        return self.prob


def export_constraints(order_id: OrderId, trs: Trs) -> ConstraintProblem:
    """Encode `every rule oriented` as a QF_LIA constraint problem.

    The problem is satisfiable iff orienting parameters exist; use
    .to_smtlib() for the text form and decode_model() to read a witness
    back into OrderParams.
    """
    return _Encoder(order_id, trs).build()
