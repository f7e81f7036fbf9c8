"""The AC-compatible term orders.

Eight order identifiers are supported:

  S            weight-based order whose AC case compares whole top-flattenings;
               only valid when every AC symbol is minimal in the precedence
  KV_GROUND    weight/root-summary variant, defined on ground terms only
  KV           extension of KV_GROUND to arbitrary terms; kept verbatim even
               though it is not closed under contexts, so the known
               counterexamples can be reproduced
  KV_PRIME     repaired variant of KV that is a genuine AC-compatible
               simplification order; deciding it needs the backtracking
               multiset extension
  ACKBO        simplification order whose AC case splits on a
               precedence-restricted multiset comparison
  ACKBO_SC     ACKBO with subterm coefficients in the weights and a variable
               condition on coefficients instead of occurrence counts
  ACRPO        AC-compatible recursive path order with embedding candidates
  ACRPO_PRIME  equivalent reformulation of ACRPO for total precedences,
               using counting polynomials instead of a second restriction

Every comparison returns a Verdict carrying a case trace that certifies GT
results.  Engines memoize aggressively; create one per parameter set and
reuse it when comparing many pairs.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .extensions import (
    ExtVerdict,
    OrderPairOracle,
    lex_ext,
    mul_ext,
    multiset_diff,
    restrict_root,
    restrict_vars,
)
from .terms import (
    App,
    InvalidParamsError,
    OrderParams,
    Symbol,
    Term,
    Var,
    _rebuild_ac,
    ac_canonical,
    ac_equal,
    admissible,
    is_ground,
    root,
    term_key,
    top_flatten,
    vars_of,
    vc_counter,
    weight as term_weight,
)


class OrderId(enum.Enum):
    S = "s"
    KV_GROUND = "kv-ground"
    KV = "kv"
    KV_PRIME = "kv-prime"
    ACKBO = "ackbo"
    ACKBO_SC = "ackbo-sc"
    ACRPO = "acrpo"
    ACRPO_PRIME = "acrpo-prime"

    @classmethod
    def from_string(cls, s: str) -> "OrderId":
        for oid in cls:
            if oid.value == s or oid.name.lower() == s.lower():
                return oid
        raise InvalidParamsError(f"unknown order id {s!r}")


KBO_FAMILY = (
    OrderId.S,
    OrderId.KV_GROUND,
    OrderId.KV,
    OrderId.KV_PRIME,
    OrderId.ACKBO,
    OrderId.ACKBO_SC,
)
RPO_FAMILY = (OrderId.ACRPO, OrderId.ACRPO_PRIME)


class Relation(enum.Enum):
    GT = "gt"
    AC_EQUAL = "ac-equal"
    NONE = "none"


@dataclass(frozen=True)
class TraceStep:
    lhs: Term
    rhs: Term
    case: str


@dataclass(frozen=True)
class Verdict:
    relation: Relation
    trace: tuple[TraceStep, ...] = ()

    @property
    def is_gt(self) -> bool:
        return self.relation is Relation.GT

    def top_case(self) -> Optional[str]:
        return self.trace[0].case if self.trace else None


def validate_params(order_id: OrderId, params: OrderParams) -> None:
    """Raise InvalidParamsError when params violate the order's preconditions."""
    sig = params.signature
    if order_id is not OrderId.ACKBO_SC and not params.weights.trivial_sc:
        raise InvalidParamsError(
            f"{order_id.value} does not admit subterm coefficients != 1"
        )
    for name in params.status:
        sym = sig.get(name)
        if sym.is_ac:
            raise InvalidParamsError(f"status given for AC symbol {name!r}")
        if params.status[name] not in ("lex", "mul"):
            raise InvalidParamsError(f"bad status {params.status[name]!r} for {name!r}")
    if order_id in KBO_FAMILY:
        if not admissible(params.precedence, params.weights):
            raise InvalidParamsError(
                "weight function is not admissible for the precedence"
            )
    if order_id is OrderId.S:
        for name in sig.ac_names:
            if not params.precedence.is_minimal(name):
                raise InvalidParamsError(
                    f"order S requires AC symbol {name!r} minimal in the precedence"
                )
    if order_id is OrderId.ACRPO_PRIME:
        if not params.precedence.is_total(sig.names):
            raise InvalidParamsError(
                "acrpo-prime is defined for total precedences only"
            )


def params_valid(order_id: OrderId, params: OrderParams) -> bool:
    try:
        validate_params(order_id, params)
        return True
    except InvalidParamsError:
        return False


# --------------------------------------------------------------------------
# auxiliary relations on terms (public one-shot forms)


def wroot_eq(params: OrderParams, s: Term, t: Term, *, ground: bool = False) -> bool:
    """Equal weight and equal root, with equal variable counts unless the
    ground form is requested.  Variables fail the root test."""
    if isinstance(s, Var) or isinstance(t, Var):
        return False
    if not ground and vars_of(s) != vars_of(t):
        return False
    wf = params.weights
    return term_weight(s, wf) == term_weight(t, wf) and s.sym == t.sym


def wroot_gt(params: OrderParams, s: Term, t: Term, *, ground: bool = False) -> bool:
    """Heavier, or equally heavy with a greater root; variables have no
    root, so they fail every root comparison."""
    if not ground:
        cs, ct = vars_of(s), vars_of(t)
        if any(cs[x] < n for x, n in ct.items()):
            return False
    wf = params.weights
    ws, wt = term_weight(s, wf), term_weight(t, wf)
    if ws > wt:
        return True
    if ws != wt:
        return False
    rs, rt = root(s), root(t)
    if rs is None or rt is None:
        return False
    return params.precedence.gt(rs.name, rt.name)


def kvprime_geq(params: OrderParams, s: Term, t: Term) -> bool:
    """The preorder of the repaired KV variant: variable condition plus
    heavier, or equally heavy with root(s) >= root(t) or t a variable."""
    cs, ct = vars_of(s), vars_of(t)
    if any(cs[x] < n for x, n in ct.items()):
        return False
    wf = params.weights
    ws, wt = term_weight(s, wf), term_weight(t, wf)
    if ws > wt:
        return True
    if ws != wt:
        return False
    if isinstance(t, Var):
        return True
    if isinstance(s, Var):
        return False
    return s.sym == t.sym or params.precedence.gt(s.sym.name, t.sym.name)


# --------------------------------------------------------------------------
# counting polynomials (used by ACRPO_PRIME)


@dataclass(frozen=True)
class LinPoly:
    """Linear polynomial with integer coefficients; zero coefficients are
    not stored."""

    coeffs: tuple[tuple[str, int], ...]
    constant: int

    @classmethod
    def make(cls, coeffs: Mapping[str, int], constant: int) -> "LinPoly":
        return cls(tuple(sorted((x, c) for x, c in coeffs.items() if c)), constant)

    def coeff_map(self) -> dict[str, int]:
        return dict(self.coeffs)


def count_poly(ms: Iterable[Term]) -> LinPoly:
    """Each variable element contributes its own indeterminate, every other
    element contributes 1."""
    coeffs: Counter = Counter()
    const = 0
    for t in ms:
        if isinstance(t, Var):
            coeffs[t.name] += 1
        else:
            const += 1
    return LinPoly.make(coeffs, const)


def _poly_diff(p: LinPoly, q: LinPoly) -> tuple[dict[str, int], int]:
    d = Counter(p.coeff_map())
    d.subtract(q.coeff_map())
    return dict(d), p.constant - q.constant


def poly_ge(p: LinPoly, q: LinPoly) -> bool:
    """p >= q for every assignment of positive integers: all coefficients
    of p - q non-negative and its value at all-ones non-negative."""
    coeffs, const = _poly_diff(p, q)
    return all(c >= 0 for c in coeffs.values()) and const + sum(coeffs.values()) >= 0


def poly_gt(p: LinPoly, q: LinPoly) -> bool:
    """p > q for every assignment of positive integers to the variables."""
    coeffs, const = _poly_diff(p, q)
    return all(c >= 0 for c in coeffs.values()) and const + sum(coeffs.values()) > 0


# --------------------------------------------------------------------------
# embedding candidates (ACRPO)


def emb_candidates(f: Symbol, params: OrderParams, t: Term) -> frozenset[Term]:
    """Terms obtained from t by replacing one element of its top-flattening
    whose root is below f with one of that element's arguments, rebuilt as
    AC-canonical right-combs."""
    if not f.is_ac:
        raise InvalidParamsError(f"embedding requires an AC symbol, got {f.name!r}")
    if root(t) != f:
        raise InvalidParamsError(
            f"embedding candidates need a term rooted by {f.name!r}"
        )
    elems = list(top_flatten(f, t))
    out: set[Term] = set()
    for i, u in enumerate(elems):
        if isinstance(u, App) and params.precedence.gt(f.name, u.sym.name):
            rest = elems[:i] + elems[i + 1 :]
            for arg in u.args:
                out.add(ac_canonical(_rebuild_ac(f, rest + [arg])))
    return frozenset(out)


# --------------------------------------------------------------------------
# engines


class _EngineBase:
    """Shared memoization for weights, variable counters and comparisons."""

    order_id: OrderId
    label = ""

    def __init__(self, params: OrderParams):
        self.params = params
        self.prec = params.precedence
        self.wf = params.weights
        self._wcache: dict[Term, int] = {}
        self._vc_cache: dict[Term, Counter] = {}
        # (s, t) -> (result, case label, witness pair or None)
        self._memo: dict[tuple[Term, Term], tuple[bool, str, Optional[tuple]]] = {}

    # -- cached basics ---------------------------------------------------

    def weight(self, t: Term) -> int:
        w = self._wcache.get(t)
        if w is None:
            if isinstance(t, Var):
                w = self.wf.w0
            else:
                w = self.wf.weight_of(t.sym)
                for i, a in enumerate(t.args, start=1):
                    w += self.wf.coeff(t.sym, i) * self.weight(a)
            self._wcache[t] = w
        return w

    def var_counter(self, t: Term) -> Counter:
        """Occurrence counts, or coefficient counts when sc is non-trivial."""
        if self.wf.trivial_sc:
            return vars_of(t)
        c = self._vc_cache.get(t)
        if c is None:
            c = vc_counter(t, self.wf)
            self._vc_cache[t] = c
        return c

    def var_cond(self, s: Term, t: Term) -> bool:
        cs = self.var_counter(s)
        ct = self.var_counter(t)
        return all(cs[x] >= n for x, n in ct.items())

    def check_inputs(self, s: Term, t: Term) -> None:
        pass

    # -- public comparison -------------------------------------------------

    def gt(self, s: Term, t: Term) -> bool:
        key = (s, t)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._decide(s, t)
            self._memo[key] = hit
        return hit[0]

    def geq_ac(self, s: Term, t: Term) -> bool:
        return ac_equal(s, t) or self.gt(s, t)

    def compare(self, s: Term, t: Term) -> Verdict:
        if ac_equal(s, t):
            return Verdict(Relation.AC_EQUAL)
        if self.gt(s, t):
            return Verdict(Relation.GT, self._trace(s, t))
        return Verdict(Relation.NONE)

    def _trace(self, s: Term, t: Term) -> tuple[TraceStep, ...]:
        steps: list[TraceStep] = []
        cur: Optional[tuple[Term, Term]] = (s, t)
        while cur is not None and len(steps) < 64:
            hit = self._memo.get(cur)
            if hit is None or not hit[0]:
                break
            steps.append(TraceStep(cur[0], cur[1], hit[1]))
            cur = hit[2]
        return tuple(steps)

    def _decide(self, s: Term, t: Term) -> tuple[bool, str, Optional[tuple]]:
        raise NotImplementedError


def _case0(s: Term, t: Term) -> bool:
    """s is one or more applications of a single unary symbol to t."""
    if not isinstance(t, Var) or not isinstance(s, App) or s.sym.arity != 1:
        return False
    f = s.sym
    cur: Term = s
    while isinstance(cur, App) and cur.sym == f:
        cur = cur.args[0]
    return cur == t


def _ms_ac_equal(ms: Sequence[Term], ns: Sequence[Term]) -> bool:
    """Multiset equality modulo AC."""
    if len(ms) != len(ns):
        return False
    return sorted(map(term_key, map(ac_canonical, ms))) == sorted(
        map(term_key, map(ac_canonical, ns))
    )


class _KboEngine(_EngineBase):
    """Common skeleton of the weight-based orders; subclasses provide the
    AC case and may disable case 0 or restrict inputs to ground terms."""

    has_case0 = True
    ground_only = False

    def check_inputs(self, s: Term, t: Term) -> None:
        if self.ground_only and not (is_ground(s) and is_ground(t)):
            raise InvalidParamsError(
                f"{self.order_id.value} is defined on ground terms only"
            )

    # cached forms of the auxiliary relations

    def _wroot_eq(self, a: Term, b: Term) -> bool:
        if isinstance(a, Var) or isinstance(b, Var):
            return False
        if not self.ground_only and vars_of(a) != vars_of(b):
            return False
        return self.weight(a) == self.weight(b) and a.sym == b.sym

    def _wroot_gt(self, a: Term, b: Term) -> bool:
        if not self.ground_only:
            ca, cb = vars_of(a), vars_of(b)
            if any(ca[x] < n for x, n in cb.items()):
                return False
        wa, wb = self.weight(a), self.weight(b)
        if wa > wb:
            return True
        if wa != wb:
            return False
        ra, rb = root(a), root(b)
        if ra is None or rb is None:
            return False
        return self.prec.gt(ra.name, rb.name)

    def _kvp_geq(self, a: Term, b: Term) -> bool:
        ca, cb = vars_of(a), vars_of(b)
        if any(ca[x] < n for x, n in cb.items()):
            return False
        wa, wb = self.weight(a), self.weight(b)
        if wa > wb:
            return True
        if wa != wb:
            return False
        if isinstance(b, Var):
            return True
        if isinstance(a, Var):
            return False
        return a.sym == b.sym or self.prec.gt(a.sym.name, b.sym.name)

    def _decide(self, s: Term, t: Term) -> tuple[bool, str, Optional[tuple]]:
        no = (False, "", None)
        if not self.var_cond(s, t):
            return no
        ws, wt = self.weight(s), self.weight(t)
        if ws > wt:
            return (True, f"{self.label}:weight", None)
        if ws < wt:
            return no
        if isinstance(t, Var):
            if self.has_case0 and _case0(s, t):
                return (True, f"{self.label}:case0", None)
            return no
        if isinstance(s, Var):
            return no
        f, g = s.sym, t.sym
        if self.prec.gt(f.name, g.name):
            return (True, f"{self.label}:case1", None)
        if f != g:
            return no
        if not f.is_ac:
            oracle = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
            if lex_ext(oracle, s.args, t.args) is ExtVerdict.STRICT:
                return (True, f"{self.label}:case2", self._lex_witness(s.args, t.args))
            return no
        return self._ac_case(f, s, t)

    def _lex_witness(self, xs: Sequence[Term], ys: Sequence[Term]) -> Optional[tuple]:
        for x, y in zip(xs, ys):
            if self.gt(x, y):
                return (x, y)
            if not ac_equal(x, y):
                break
        return None

    def _flatten_parts(self, f: Symbol, s: Term, t: Term):
        S = top_flatten(f, s)
        T = top_flatten(f, t)
        Sn = restrict_root(S, self.prec, f, "not_less")
        rhs = restrict_root(T, self.prec, f, "not_less") + multiset_diff(
            restrict_vars(T), restrict_vars(S)
        )
        return S, T, Sn, rhs

    def _ac_case(self, f: Symbol, s: Term, t: Term):
        raise NotImplementedError


class _SOrderEngine(_KboEngine):
    order_id = OrderId.S
    label = "s"

    def _ac_case(self, f, s, t):
        S = top_flatten(f, s)
        T = top_flatten(f, t)
        oracle = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
        if mul_ext(oracle, S, T) is ExtVerdict.STRICT:
            return (True, "s:case3", None)
        return (False, "", None)


class _KvEngine(_KboEngine):
    order_id = OrderId.KV
    label = "kv"

    def _ms_wroot_equal(self, ms: Sequence[Term], ns: Sequence[Term]) -> bool:
        """Bijective pairing under the weight/root equivalence; variables
        pair with nothing."""
        if len(ms) != len(ns):
            return False
        if any(isinstance(u, Var) for u in ms) or any(isinstance(u, Var) for u in ns):
            return False

        def cls(u: Term):
            return (
                self.weight(u),
                u.sym.name,
                () if self.ground_only else tuple(sorted(vars_of(u).items())),
            )

        return sorted(map(cls, ms)) == sorted(map(cls, ns))

    def _ac_case(self, f, s, t):
        S, T, Sn, rhs = self._flatten_parts(f, s, t)
        oracle = OrderPairOracle(
            geq=self._wroot_eq, gt=self._wroot_gt, equiv_symmetric=True
        )
        if mul_ext(oracle, Sn, rhs) is ExtVerdict.STRICT:
            return (True, f"{self.label}:case3a", None)
        if self._ms_wroot_equal(Sn, rhs):
            if len(S) > len(T):
                return (True, f"{self.label}:case3b", None)
            if len(S) == len(T):
                full = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
                if mul_ext(full, S, T) is ExtVerdict.STRICT:
                    return (True, f"{self.label}:case3c", None)
        return (False, "", None)


class _KvGroundEngine(_KvEngine):
    order_id = OrderId.KV_GROUND
    label = "kv-ground"
    has_case0 = False
    ground_only = True


class _KvPrimeEngine(_KboEngine):
    order_id = OrderId.KV_PRIME
    label = "kv-prime"

    def _ac_case(self, f, s, t):
        S, T, Sn, rhs = self._flatten_parts(f, s, t)
        oracle = OrderPairOracle(
            geq=self._kvp_geq, gt=self._wroot_gt, equiv_symmetric=False
        )
        v = mul_ext(oracle, Sn, rhs)
        if v is ExtVerdict.STRICT:
            return (True, "kv-prime:case3a", None)
        if v is ExtVerdict.WEAK:
            if len(S) > len(T):
                return (True, "kv-prime:case3b", None)
            if len(S) == len(T):
                full = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
                if mul_ext(full, S, T) is ExtVerdict.STRICT:
                    return (True, "kv-prime:case3c", None)
        return (False, "", None)


class _AckboEngine(_KboEngine):
    order_id = OrderId.ACKBO
    label = "ackbo"

    def _ac_case(self, f, s, t):
        S, T, Sn, rhs = self._flatten_parts(f, s, t)
        oracle = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
        if mul_ext(oracle, Sn, rhs) is ExtVerdict.STRICT:
            return (True, f"{self.label}:case3a", None)
        if _ms_ac_equal(Sn, rhs):
            if len(S) > len(T):
                return (True, f"{self.label}:case3b", None)
            if len(S) == len(T):
                Sl = restrict_root(S, self.prec, f, "less")
                Tl = restrict_root(T, self.prec, f, "less")
                if mul_ext(oracle, Sl, Tl) is ExtVerdict.STRICT:
                    return (True, f"{self.label}:case3c", None)
        return (False, "", None)


class _AckboScEngine(_AckboEngine):
    order_id = OrderId.ACKBO_SC
    label = "ackbo-sc"


class _AcrpoEngine(_EngineBase):
    """Recursive path order with AC embedding candidates.

    The AC subcase conditions are evaluated before the embedding guard,
    which prunes the expensive recursion over candidates of the right-hand
    side; the conjunction is unchanged.
    """

    order_id = OrderId.ACRPO
    label = "acrpo"

    def _emb(self, f: Symbol, t: Term) -> list[Term]:
        return sorted(emb_candidates(f, self.params, t), key=term_key)

    def _decide(self, s: Term, t: Term) -> tuple[bool, str, Optional[tuple]]:
        no = (False, "", None)
        if isinstance(s, Var):
            return no
        for si in s.args:
            if self.geq_ac(si, t):
                wit = (si, t) if self.gt(si, t) else None
                return (True, f"{self.label}:case0", wit)
        if isinstance(t, Var):
            return no
        f, g = s.sym, t.sym
        if self.prec.gt(f.name, g.name):
            if all(self.gt(s, tj) for tj in t.args):
                return (True, f"{self.label}:case1", None)
            return no
        if f != g:
            return no
        if not f.is_ac:
            if not all(self.gt(s, tj) for tj in t.args):
                return no
            oracle = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
            if self.params.status_of(f.name) == "lex":
                if lex_ext(oracle, s.args, t.args) is ExtVerdict.STRICT:
                    return (True, f"{self.label}:case2a", None)
            else:
                if mul_ext(oracle, s.args, t.args) is ExtVerdict.STRICT:
                    return (True, f"{self.label}:case2b", None)
            return no
        for s2 in self._emb(f, s):
            if self.geq_ac(s2, t):
                wit = (s2, t) if self.gt(s2, t) else None
                return (True, f"{self.label}:case3", wit)
        sub = self._ac_subcase(f, s, t)
        if sub and all(self.gt(s, t2) for t2 in self._emb(f, t)):
            return (True, f"{self.label}:{sub}", None)
        return no

    def _ac_subcase(self, f: Symbol, s: Term, t: Term) -> Optional[str]:
        S = top_flatten(f, s)
        T = top_flatten(f, t)
        Sn = restrict_root(S, self.prec, f, "not_less")
        rhs = restrict_root(T, self.prec, f, "not_less") + multiset_diff(
            restrict_vars(T), restrict_vars(S)
        )
        oracle = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
        if mul_ext(oracle, Sn, rhs) is ExtVerdict.STRICT:
            return "case4a"
        if _ms_ac_equal(Sn, rhs):
            if len(S) > len(T):
                return "case4b"
            if len(S) == len(T):
                Sl = restrict_root(S, self.prec, f, "less")
                Tl = restrict_root(T, self.prec, f, "less")
                if mul_ext(oracle, Sl, Tl) is ExtVerdict.STRICT:
                    return "case4c"
        return None


class _AcrpoPrimeEngine(_AcrpoEngine):
    order_id = OrderId.ACRPO_PRIME
    label = "acrpo-prime"

    def _ac_subcase(self, f: Symbol, s: Term, t: Term) -> Optional[str]:
        S = top_flatten(f, s)
        T = top_flatten(f, t)
        Sg = restrict_root(S, self.prec, f, "greater")
        Tg = restrict_root(T, self.prec, f, "greater")
        oracle = OrderPairOracle(geq=ac_equal, gt=self.gt, equiv_symmetric=True)
        guard = mul_ext(
            oracle, Sg + restrict_vars(S), Tg + restrict_vars(T)
        ).at_least_weak
        if not guard:
            return None
        if mul_ext(oracle, Sg, Tg) is ExtVerdict.STRICT:
            return "case4a"
        ps, pt = count_poly(S), count_poly(T)
        if poly_gt(ps, pt):
            return "case4b"
        if poly_ge(ps, pt) and mul_ext(oracle, S, T) is ExtVerdict.STRICT:
            return "case4c"
        return None


_ENGINES = {
    OrderId.S: _SOrderEngine,
    OrderId.KV_GROUND: _KvGroundEngine,
    OrderId.KV: _KvEngine,
    OrderId.KV_PRIME: _KvPrimeEngine,
    OrderId.ACKBO: _AckboEngine,
    OrderId.ACKBO_SC: _AckboScEngine,
    OrderId.ACRPO: _AcrpoEngine,
    OrderId.ACRPO_PRIME: _AcrpoPrimeEngine,
}


class OrderEngine:
    """A validated order instance with persistent memo tables.

    Instances are not thread-safe (the memo tables mutate); create one
    engine per thread or parameter set.
    """

    def __init__(self, order_id: OrderId, params: OrderParams):
        validate_params(order_id, params)
        self.order_id = order_id
        self.params = params
        self._impl = _ENGINES[order_id](params)

    def gt(self, s: Term, t: Term) -> bool:
        self._impl.check_inputs(s, t)
        return self._impl.gt(s, t)

    def compare(self, s: Term, t: Term) -> Verdict:
        self._impl.check_inputs(s, t)
        return self._impl.compare(s, t)


def compare(order_id: OrderId, params: OrderParams, s: Term, t: Term) -> Verdict:
    """One-shot comparison; build an OrderEngine when comparing many pairs
    under the same parameters."""
    return OrderEngine(order_id, params).compare(s, t)
