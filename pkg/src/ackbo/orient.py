"""Search for order parameters orienting a whole TRS.

The search is bounded-complete: precedences are enumerated exhaustively
(all strict total orders, or all strict partial orders, on the signature),
weight vectors range over integers up to a bound, and the first witness in
canonical enumeration order wins.  Two sound prefilters prune candidates
without losing completeness: the per-rule variable condition, which is
independent of the parameters, and the per-rule weight difference, which
must be non-negative for any weight-based order.
"""
from __future__ import annotations

import functools
import itertools
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .orders import (
    KBO_FAMILY,
    OrderEngine,
    OrderId,
    Relation,
    Verdict,
    _ENGINES,
    params_valid,
)
from .terms import (
    App,
    InvalidParamsError,
    OrderParams,
    Precedence,
    Rule,
    Signature,
    Term,
    Trs,
    Var,
    WeightFn,
    subterms,
    vars_of,
)

PARTIAL_MODE_MAX_SYMBOLS = 8


@dataclass(frozen=True)
class SearchConfig:
    precedence_mode: str = "partial"  # "total" | "partial" | "fixed"
    fixed_precedence: Optional[Precedence] = None
    max_weight: int = 2
    max_sc: int = 1
    time_budget: Optional[float] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.max_weight < 1:
            raise InvalidParamsError("max_weight must be at least 1")
        if self.max_sc < 1:
            raise InvalidParamsError("max_sc must be at least 1")
        if self.precedence_mode not in ("total", "partial", "fixed"):
            raise InvalidParamsError(f"bad precedence mode {self.precedence_mode!r}")
        if self.precedence_mode == "fixed" and self.fixed_precedence is None:
            raise InvalidParamsError("fixed mode needs fixed_precedence")


class OrientStatus:
    ORIENTED = "oriented"
    NOT_ORIENTABLE = "not-orientable-within-bounds"
    UNKNOWN = "unknown-within-bounds"


@dataclass(frozen=True)
class OrientResult:
    status: str
    params: Optional[OrderParams] = None
    verdicts: tuple[Verdict, ...] = ()
    candidates_tried: int = 0
    wall_time: float = 0.0

    @property
    def oriented(self) -> bool:
        return self.status == OrientStatus.ORIENTED


def orient_check(order_id: OrderId, params: OrderParams, trs: Trs) -> list[Verdict]:
    """Per-rule verdicts of compare(order_id, params, lhs, rhs)."""
    engine = OrderEngine(order_id, params)
    return [engine.compare(r.lhs, r.rhs) for r in trs.rules]


# --------------------------------------------------------------------------
# precedence enumeration


@functools.lru_cache(maxsize=None)
def _total_precedences_cached(names: tuple[str, ...]) -> tuple[Precedence, ...]:
    out = []
    for perm in itertools.permutations(sorted(names)):
        pairs = [
            (perm[i], perm[j])
            for i in range(len(perm))
            for j in range(i + 1, len(perm))
        ]
        out.append(Precedence(pairs))
    out.sort(key=lambda p: p.key())
    return tuple(out)


def enumerate_total_precedences(names: Sequence[str]) -> list[Precedence]:
    """All strict total orders on the given names, canonically ordered."""
    return list(_total_precedences_cached(tuple(sorted(names))))


def _extend_posets(
    posets: Iterable[frozenset[tuple[str, str]]], name: str, names_so_far: list[str]
) -> Iterator[frozenset[tuple[str, str]]]:
    # place `name` into each poset: choose a down-set D (below name) and an
    # up-set U (above name) with U x D already inside the order
    all_names = frozenset(names_so_far)
    for pairs in posets:
        succ: dict[str, set[str]] = {n: set() for n in names_so_far}
        pred: dict[str, set[str]] = {n: set() for n in names_so_far}
        for f, g in pairs:
            succ[f].add(g)
            pred[g].add(f)
        down_sets = _closed_subsets(names_so_far, succ)
        up_sets = _closed_subsets(names_so_far, pred)
        for U in up_sets:
            # elements strictly below every member of U
            common_below = all_names
            for u in U:
                common_below = common_below & frozenset(succ[u])
            for D in down_sets:
                if D & U or not D <= common_below:
                    continue
                new = set(pairs)
                new.update((u, name) for u in U)
                new.update((name, d) for d in D)
                yield frozenset(new)


def _closed_subsets(names: list[str], reach: dict[str, set[str]]) -> list[frozenset[str]]:
    """Subsets closed under the reach map (if n in S then reach[n] <= S)."""
    out = []
    for bits in range(1 << len(names)):
        S = {names[i] for i in range(len(names)) if bits >> i & 1}
        if all(reach[n] <= S for n in S):
            out.append(frozenset(S))
    return out


@functools.lru_cache(maxsize=8)
def _partial_precedences_cached(names: tuple[str, ...]) -> tuple[Precedence, ...]:
    posets: list[frozenset[tuple[str, str]]] = [frozenset()]
    placed: list[str] = []
    for name in names:
        if placed:
            posets = list(_extend_posets(posets, name, placed))
        placed.append(name)
    out = [Precedence(p) for p in posets]
    out.sort(key=lambda p: p.key())
    return tuple(out)


def enumerate_partial_precedences(names: Sequence[str]) -> list[Precedence]:
    """All strict partial orders on the given names, canonically ordered by
    their pair sets.  Guarded by PARTIAL_MODE_MAX_SYMBOLS in search()."""
    return list(_partial_precedences_cached(tuple(sorted(names))))


# --------------------------------------------------------------------------
# weight vector enumeration


def _rule_delta(rule: Rule) -> tuple[Counter, int]:
    """Linear form of weight(lhs) - weight(rhs): per-symbol coefficients
    plus a w0 coefficient.  Valid only without subterm coefficients."""
    coeffs: Counter = Counter()
    w0c = 0
    for t, sign in ((rule.lhs, 1), (rule.rhs, -1)):
        for u in subterms(t):
            if isinstance(u, Var):
                w0c += sign
            else:
                coeffs[u.sym.name] += sign
    return coeffs, w0c


def _var_prefilter(order_id: OrderId, rule: Rule) -> bool:
    """Parameter-independent necessary condition for lhs > rhs."""
    lv, rv = vars_of(rule.lhs), vars_of(rule.rhs)
    if order_id in KBO_FAMILY and order_id is not OrderId.ACKBO_SC:
        return all(lv[x] >= n for x, n in rv.items())
    return set(rv) <= set(lv)


@dataclass(frozen=True)
class _WeightVector:
    w: tuple[tuple[str, int], ...]
    w0: int
    zero_unaries: frozenset[str]


def _weight_vectors(
    sig: Signature, max_weight: int, deltas: Optional[list[tuple[Counter, int]]]
) -> list[_WeightVector]:
    """Admissibility-ready weight vectors in lexicographic order of
    (w0, weights by symbol name), filtered by the constant lower bound,
    the at-most-one-zero-unary rule, and the per-rule weight deltas."""
    names = list(sig.names)
    ranges = []
    for n in names:
        sym = sig.get(n)
        lo = 1 if sym.arity == 0 else 0
        ranges.append(range(lo, max_weight + 1))
    out = []
    for w0 in range(1, max_weight + 1):
        for combo in itertools.product(*ranges):
            w = dict(zip(names, combo))
            if any(
                sig.get(n).arity == 0 and w[n] < w0 for n in names
            ):
                continue
            zeros = frozenset(
                n for n in names if sig.get(n).arity == 1 and w[n] == 0
            )
            if len(zeros) > 1:
                continue  # two zero-weight unaries can never both be greatest
            if deltas is not None:
                ok = True
                for coeffs, w0c in deltas:
                    d = w0c * w0 + sum(c * w[n] for n, c in coeffs.items())
                    if d < 0:
                        ok = False
                        break
                if not ok:
                    continue
            out.append(_WeightVector(tuple(sorted(w.items())), w0, zeros))
    return out


def _sc_maps(sig: Signature, max_sc: int) -> list[dict[tuple[str, int], int]]:
    """All subterm-coefficient assignments up to max_sc (1 on AC symbols)."""
    slots = [
        (sym.name, i)
        for sym in sig.symbols
        if not sym.is_ac
        for i in range(1, sym.arity + 1)
    ]
    out = []
    for combo in itertools.product(range(1, max_sc + 1), repeat=len(slots)):
        out.append({k: v for k, v in zip(slots, combo) if v != 1})
    return out


# --------------------------------------------------------------------------
# the search itself


def _precedences_for(trs: Trs, cfg: SearchConfig) -> list[Precedence]:
    names = trs.signature.names
    if cfg.precedence_mode == "fixed":
        assert cfg.fixed_precedence is not None
        return [cfg.fixed_precedence]
    if cfg.precedence_mode == "total":
        return enumerate_total_precedences(names)
    if len(names) > PARTIAL_MODE_MAX_SYMBOLS:
        raise InvalidParamsError(
            f"partial mode enumerates posets; refusing signature of "
            f"{len(names)} > {PARTIAL_MODE_MAX_SYMBOLS} symbols"
        )
    return enumerate_partial_precedences(names)


def _required_pairs(order_id: OrderId, trs: Trs) -> list[tuple[str, str]]:
    """Precedence pairs every witness must contain.

    When a rule's weight difference is identically zero and both root
    symbols are distinct applications, the only applicable case of any
    weight-based order is the root-precedence one, so root(lhs) > root(rhs)
    is forced regardless of the weights.
    """
    if order_id not in KBO_FAMILY or order_id is OrderId.ACKBO_SC:
        return []
    out = []
    for rule in trs.rules:
        coeffs, w0c = _rule_delta(rule)
        if w0c == 0 and all(v == 0 for v in coeffs.values()):
            lr, rr = rule.lhs, rule.rhs
            if isinstance(lr, App) and isinstance(rr, App) and lr.sym != rr.sym:
                out.append((lr.sym.name, rr.sym.name))
    return out


def _prec_ok_for_id(order_id: OrderId, prec: Precedence, sig: Signature) -> bool:
    if order_id is OrderId.S:
        if not all(prec.is_minimal(n) for n in sig.ac_names):
            return False
    if order_id is OrderId.ACRPO_PRIME:
        if not prec.is_total(sig.names):
            return False
    return True


def _try_precedence(
    order_id: OrderId,
    trs: Trs,
    prec: Precedence,
    vector_groups: Mapping[frozenset[str], Sequence[_WeightVector]],
    sc_maps: Sequence[dict],
    status: dict[str, str],
    required: Sequence[tuple[str, str]],
) -> tuple[int, Optional[tuple[OrderParams, tuple[Verdict, ...]]]]:
    """First orienting candidate under one precedence; returns the number
    of candidates tried and the witness, if any.

    Vector groups are keyed by their zero-weight unary symbols; a group is
    admissible here only when those symbols coincide with the precedence's
    greatest element, so dead precedences cost almost nothing.
    """
    sig = trs.signature
    if not all(prec.gt(f, g) for f, g in required):
        return 0, None
    if not _prec_ok_for_id(order_id, prec, sig):
        return 0, None
    greatest = prec.greatest(sig.names)
    groups: list[Sequence[tuple[int, _WeightVector]]] = []
    empty = frozenset()
    if empty in vector_groups:
        groups.append(vector_groups[empty])
    if greatest is not None and frozenset((greatest,)) in vector_groups:
        groups.append(vector_groups[frozenset((greatest,))])
    if len(groups) == 2:
        merged = sorted(groups[0] + list(groups[1]))
    elif groups:
        merged = list(groups[0])
    else:
        merged = []
    tried = 0
    engine_cls = _ENGINES[order_id]
    for _, vec in merged:
        for sc in sc_maps:
            # admissibility holds by construction of the groups; the
            # engine is built directly to skip re-validation
            wf = WeightFn(sig, dict(vec.w), vec.w0, sc)
            params = OrderParams(prec, wf, status)
            tried += 1
            engine = engine_cls(params)
            verdicts = []
            ok = True
            for rule in trs.rules:
                v = engine.compare(rule.lhs, rule.rhs)
                verdicts.append(v)
                if not v.is_gt:
                    ok = False
                    break
            if ok:
                return tried, (params, tuple(verdicts))
    return tried, None


def search(order_id: OrderId, trs: Trs, cfg: SearchConfig) -> OrientResult:
    """Bounded-complete search for orienting parameters.

    Enumeration order is deterministic: precedences in canonical order of
    their pair sets, then weight vectors lexicographically, then subterm
    coefficients; the first witness wins, also under parallel execution.
    """
    start = time.monotonic()
    if order_id is OrderId.KV_GROUND and any(
        vars_of(r.lhs) or vars_of(r.rhs) for r in trs.rules
    ):
        raise InvalidParamsError("kv-ground handles ground systems only")
    if not all(_var_prefilter(order_id, r) for r in trs.rules):
        return OrientResult(
            OrientStatus.NOT_ORIENTABLE, wall_time=time.monotonic() - start
        )
    precedences = _precedences_for(trs, cfg)
    use_delta = order_id in KBO_FAMILY and order_id is not OrderId.ACKBO_SC
    if order_id in KBO_FAMILY:
        deltas = [_rule_delta(r) for r in trs.rules] if use_delta else None
        vectors = _weight_vectors(trs.signature, cfg.max_weight, deltas)
    else:
        # path orders ignore weights; one harmless placeholder vector
        vectors = [
            _WeightVector(
                tuple((n, 1) for n in trs.signature.names), 1, frozenset()
            )
        ]
    vector_groups: dict[frozenset[str], list[tuple[int, _WeightVector]]] = {}
    for idx, vec in enumerate(vectors):
        vector_groups.setdefault(vec.zero_unaries, []).append((idx, vec))
    required = _required_pairs(order_id, trs)
    sc_maps = (
        _sc_maps(trs.signature, cfg.max_sc)
        if order_id is OrderId.ACKBO_SC
        else [{}]
    )
    status: dict[str, str] = {}

    tried = 0
    deadline = None if cfg.time_budget is None else start + cfg.time_budget

    def run_range(indices: Sequence[int]):
        local = 0
        for idx in indices:
            if deadline is not None and time.monotonic() > deadline:
                return local, None, True
            n, hit = _try_precedence(
                order_id, trs, precedences[idx], vector_groups, sc_maps, status,
                required,
            )
            local += n
            if hit is not None:
                return local, (idx, hit), False
        return local, None, False

    if cfg.workers <= 1:
        tried, found, timed_out = run_range(range(len(precedences)))
        hit = found[1] if found else None
    else:
        chunks = [
            list(range(i, len(precedences), cfg.workers))
            for i in range(cfg.workers)
        ]
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(run_range, chunks))
        tried = sum(r[0] for r in results)
        timed_out = any(r[2] for r in results)
        found = min(
            (r[1] for r in results if r[1] is not None),
            key=lambda x: x[0],
            default=None,
        )
        hit = found[1] if found else None

    wall = time.monotonic() - start
    if hit is not None:
        params, verdicts = hit
        return OrientResult(OrientStatus.ORIENTED, params, verdicts, tried, wall)
    if timed_out:
        return OrientResult(OrientStatus.UNKNOWN, candidates_tried=tried, wall_time=wall)
    return OrientResult(
        OrientStatus.NOT_ORIENTABLE, candidates_tried=tried, wall_time=wall
    )
