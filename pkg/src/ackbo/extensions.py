"""Lexicographic and multiset extensions of order pairs, plus the
precedence-restricted multiset comparison shared by all AC order variants.

An order pair is a preorder `geq` together with a strict order `gt`
satisfying the compatibility inclusion geq.gt.geq <= gt.  Both extensions
take the pair as an oracle of two boolean predicates.

Two decision procedures sit behind mul_ext.  When geq-minus-gt is a
symmetric relation (an equivalence such as AC equality), equivalent
elements may be cancelled pairwise and the rest checked by strict covering;
that is polynomial.  Without symmetry no polynomial shortcut exists in
general, so a memoized backtracking search over matchings is used instead.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .terms import Precedence, Symbol, Term, Var, root, term_key


class ExtVerdict(enum.IntEnum):
    """Outcome of an extension comparison; STRICT always entails WEAK."""

    NONE = 0
    WEAK = 1
    STRICT = 2

    @property
    def at_least_weak(self) -> bool:
        return self is not ExtVerdict.NONE


@dataclass(frozen=True)
class OrderPairOracle:
    """Boolean predicates for a preorder/strict-order pair.

    equiv_symmetric asserts that geq-minus-gt is symmetric, enabling the
    polynomial cancellation algorithm in mul_ext.  Compatibility of the
    pair is the caller's responsibility.
    """

    geq: Callable[[Term, Term], bool]
    gt: Callable[[Term, Term], bool]
    equiv_symmetric: bool = True


def _sorted(ms: Iterable[Term]) -> list[Term]:
    return sorted(ms, key=term_key)


def lex_ext(o: OrderPairOracle, xs: Sequence[Term], ys: Sequence[Term]) -> ExtVerdict:
    """Lexicographic extension on equal-length tuples.

    STRICT: some prefix of weak comparisons followed by a strict one.
    WEAK: STRICT, or weak comparisons all the way through.
    """
    if len(xs) != len(ys):
        raise ValueError(f"lex_ext on tuples of lengths {len(xs)} != {len(ys)}")
    n = len(xs)
    r = 0
    while r < n and o.geq(xs[r], ys[r]):
        r += 1
    if any(o.gt(xs[p], ys[p]) for p in range(min(r + 1, n))):
        return ExtVerdict.STRICT
    return ExtVerdict.WEAK if r == n else ExtVerdict.NONE


def mul_ext(o: OrderPairOracle, ms: Iterable[Term], ns: Iterable[Term]) -> ExtVerdict:
    """Multiset extension of the order pair.

    M is strictly greater than N when, after pairing some elements of M
    weakly against distinct elements of N, every remaining element of N is
    strictly below some remaining element of M, with at least one element
    of M left out of the pairing.  Dropping the last condition gives the
    weak verdict.
    """
    M = _sorted(ms)
    N = _sorted(ns)
    if o.equiv_symmetric:
        return _mul_ext_cancel(o, M, N)
    return _mul_ext_backtrack(o, M, N)


def _mul_ext_cancel(o: OrderPairOracle, M: list[Term], N: list[Term]) -> ExtVerdict:
    # cancel equivalent pairs; sound because geq-minus-gt is symmetric,
    # which makes the result independent of the pairs chosen
    while True:
        hit = None
        for i, s in enumerate(M):
            for j, t in enumerate(N):
                if o.geq(s, t) and not o.gt(s, t):
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        M.pop(hit[0])
        N.pop(hit[1])
    if not all(any(o.gt(s, t) for s in M) for t in N):
        return ExtVerdict.NONE
    return ExtVerdict.STRICT if M else ExtVerdict.WEAK


def _mul_ext_backtrack(o: OrderPairOracle, M: list[Term], N: list[Term]) -> ExtVerdict:
    m = len(M)
    geq = [[o.geq(s, t) for t in N] for s in M]
    gt = [[o.gt(s, t) for t in N] for s in M]

    memo: dict[tuple, ExtVerdict] = {}

    def rec(j: int, remaining: frozenset[int], deferred: tuple[int, ...]) -> ExtVerdict:
        # remaining: indices of M not yet used as weak partners
        # deferred: indices of N that must be covered by the final remainder
        key = (j, remaining, deferred)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if j == len(N):
            if all(any(gt[i][d] for i in remaining) for d in deferred):
                res = ExtVerdict.STRICT if remaining else ExtVerdict.WEAK
            else:
                res = ExtVerdict.NONE
            memo[key] = res
            return res
        best = ExtVerdict.NONE
        # cover later: only viable if something can still dominate N[j]
        if any(gt[i][j] for i in remaining):
            best = rec(j + 1, remaining, deferred + (j,))
        if best is not ExtVerdict.STRICT:
            seen: set[Term] = set()
            for i in remaining:
                if M[i] in seen or not geq[i][j]:
                    continue
                seen.add(M[i])
                best = max(best, rec(j + 1, remaining - {i}, deferred))
                if best is ExtVerdict.STRICT:
                    break
        memo[key] = best
        return best

    return rec(0, frozenset(range(m)), ())


def restrict_vars(ms: Iterable[Term]) -> tuple[Term, ...]:
    """The variable elements of a multiset."""
    return tuple(t for t in _sorted(ms) if isinstance(t, Var))


def restrict_root(
    ms: Iterable[Term], p: Precedence, f: Symbol, rel: str
) -> tuple[Term, ...]:
    """Non-variable elements whose root stands in the given relation to f.

    rel is one of "not_less" (root not below f), "less", or "greater".
    Variables never appear in the result.
    """
    out = []
    for t in _sorted(ms):
        r = root(t)
        if r is None:
            continue
        if rel == "not_less":
            keep = not p.gt(f.name, r.name)
        elif rel == "less":
            keep = p.gt(f.name, r.name)
        elif rel == "greater":
            keep = p.gt(r.name, f.name)
        else:
            raise ValueError(f"unknown root relation {rel!r}")
        if keep:
            out.append(t)
    return tuple(out)


def multiset_diff(ms: Sequence[Term], ns: Sequence[Term]) -> tuple[Term, ...]:
    """Multiset difference ms - ns."""
    out = list(ms)
    for t in ns:
        try:
            out.remove(t)
        except ValueError:
            pass
    return tuple(_sorted(out))


def cmp_f(
    o: OrderPairOracle,
    S: Iterable[Term],
    T: Iterable[Term],
    f: Symbol,
    p: Precedence,
) -> ExtVerdict:
    """The comparison used inside case 3 of the AC orders:

    compare the not-below-f part of S against the not-below-f part of T
    joined with T's leftover variables (those not cancelled by S's), in
    the multiset extension of the oracle pair.
    """
    if not f.is_ac:
        raise ValueError(f"cmp_f requires an AC symbol, got {f.name!r}")
    S = tuple(_sorted(S))
    T = tuple(_sorted(T))
    left = restrict_root(S, p, f, "not_less")
    right = restrict_root(T, p, f, "not_less") + multiset_diff(
        restrict_vars(T), restrict_vars(S)
    )
    return mul_ext(o, left, right)
