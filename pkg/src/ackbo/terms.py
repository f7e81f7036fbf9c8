"""First-order terms over signatures with designated binary AC symbols.

Everything here is immutable after construction and safe to share across
threads.  Terms cache their hash, size, variable counts and AC-canonical
form, so repeated order comparisons stay cheap.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union


class TermOrderError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(TermOrderError):
    """Ill-formed symbol, signature, or term construction."""


class UndeclaredSymbolError(TermOrderError):
    """A term mentions a symbol the signature or weight function lacks."""


class InvalidParamsError(TermOrderError):
    """Order parameters violate a precondition of the selected order.

    Raised instead of returning a NONE verdict, so configuration mistakes
    are never mistaken for incomparability.
    """


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int
    is_ac: bool = False

    def __post_init__(self) -> None:
        if self.arity < 0:
            raise SignatureError(f"negative arity for {self.name!r}")
        if self.is_ac and self.arity != 2:
            raise SignatureError(f"AC symbol {self.name!r} must be binary")

    def __repr__(self) -> str:
        ac = ", ac" if self.is_ac else ""
        return f"Symbol({self.name!r}/{self.arity}{ac})"


class Signature:
    """A finite set of symbols with unique names."""

    __slots__ = ("_by_name",)

    def __init__(self, symbols: Iterable[Symbol]):
        by_name: dict[str, Symbol] = {}
        for sym in symbols:
            if sym.name in by_name and by_name[sym.name] != sym:
                raise SignatureError(f"conflicting declarations for {sym.name!r}")
            by_name[sym.name] = sym
        self._by_name = by_name

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self._by_name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Signature) and self._by_name == other._by_name

    def get(self, name: str) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise UndeclaredSymbolError(f"symbol {name!r} not in signature") from None

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(self._by_name[n] for n in sorted(self._by_name))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self._by_name))

    @property
    def ac_names(self) -> tuple[str, ...]:
        return tuple(n for n in sorted(self._by_name) if self._by_name[n].is_ac)

    def __repr__(self) -> str:
        return f"Signature({list(self.symbols)!r})"


class Term:
    """Either a variable or an application; see Var and App."""

    __slots__ = ()

    @property
    def is_var(self) -> bool:
        return isinstance(self, Var)


class Var(Term):
    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("v", name))

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, Var) and other.name == self.name)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __str__(self) -> str:
        return self.name


class App(Term):
    __slots__ = ("sym", "args", "_hash", "_size", "_vars", "_canon", "_key")

    def __init__(self, sym: Symbol, args: Sequence[Term] = ()):
        args = tuple(args)
        if len(args) != sym.arity:
            raise SignatureError(
                f"{sym.name!r} has arity {sym.arity}, got {len(args)} arguments"
            )
        self.sym = sym
        self.args = args
        self._hash = hash(("a", sym.name, sym.arity) + tuple(map(hash, args)))
        self._size: Optional[int] = None
        self._vars: Optional[Counter] = None
        self._canon: Optional[Term] = None
        self._key: Optional[tuple] = None

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, App)
            and other._hash == self._hash
            and other.sym == self.sym
            and other.args == self.args
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"App({self.sym.name!r}, {list(self.args)!r})"

    def __str__(self) -> str:
        return format_term(self)


_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_#'.")


def _is_operator_name(name: str) -> bool:
    return bool(name) and not set(name) <= _IDENT_CHARS


def format_term(t: Term, _nested_infix: bool = False) -> str:
    """Render a term; binary symbols with operator-like names print infix.

    Infix subterms are parenthesized exactly when they sit inside another
    infix application, which keeps the rendering unambiguous and lets
    rules round-trip through the parser unchanged.
    """
    if isinstance(t, Var):
        return t.name
    assert isinstance(t, App)
    if t.sym.arity == 2 and _is_operator_name(t.sym.name):
        a, b = t.args
        body = (
            f"{format_term(a, True)} {t.sym.name} {format_term(b, True)}"
        )
        return f"({body})" if _nested_infix else body
    if not t.args:
        return t.sym.name
    return f"{t.sym.name}({','.join(format_term(a) for a in t.args)})"


def size(t: Term) -> int:
    """Number of symbol and variable occurrences in t."""
    if isinstance(t, Var):
        return 1
    if t._size is None:
        t._size = 1 + sum(size(a) for a in t.args)
    return t._size


def vars_of(t: Term) -> Counter:
    """Multiset of variable names occurring in t (cached on the term)."""
    if isinstance(t, Var):
        return Counter({t.name: 1})
    if t._vars is None:
        c: Counter = Counter()
        for a in t.args:
            c.update(vars_of(a))
        t._vars = c
    return t._vars


def var_count(t: Term, x: str) -> int:
    """Number of occurrences of variable x in t."""
    return vars_of(t)[x]

def is_ground(t: Term) -> bool:
    return not vars_of(t)


def root(t: Term) -> Optional[Symbol]:
    """Root symbol of an application; variables have none."""
    return t.sym if isinstance(t, App) else None


def term_key(t: Term) -> tuple:
    """Total order key on terms: variables first (by name), then applications
    by (symbol name, arity, is_ac) and recursively on arguments."""
    if isinstance(t, Var):
        return (0, t.name)
    if t._key is None:
        t._key = (1, t.sym.name, t.sym.arity, t.sym.is_ac) + (
            tuple(term_key(a) for a in t.args),
        )
    return t._key


def subterms(t: Term) -> Iterator[Term]:
    """All subterms of t, including t itself."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def top_flatten(f: Symbol, t: Term) -> tuple[Term, ...]:
    """Multiset of maximal non-f-rooted subterms under nested f applications.

    The result is sorted by term_key so equal multisets compare equal as
    tuples; no element of the result is rooted by f.
    """
    if not f.is_ac:
        raise SignatureError(f"top_flatten requires an AC symbol, got {f.name!r}")
    out: list[Term] = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, App) and u.sym == f:
            stack.extend(u.args)
        else:
            out.append(u)
    out.sort(key=term_key)
    return tuple(out)


def _rebuild_ac(f: Symbol, elems: Sequence[Term]) -> Term:
    """Right-comb f(e1, f(e2, ... f(e_{n-1}, e_n))) over the given elements."""
    if not elems:
        raise SignatureError("cannot rebuild an AC term from zero elements")
    acc = elems[-1]
    for e in reversed(elems[:-1]):
        acc = App(f, (e, acc))
    return acc


def ac_canonical(t: Term) -> Term:
    """Canonical representative of t's AC-equivalence class.

    AC subterms are fully flattened, their arguments sorted by term_key,
    then rebuilt as right-combs.  Idempotent.
    """
    if isinstance(t, Var):
        return t
    if t._canon is not None:
        return t._canon
    args = tuple(ac_canonical(a) for a in t.args)
    if t.sym.is_ac:
        elems: list[Term] = []
        stack = list(args)
        while stack:
            u = stack.pop()
            if isinstance(u, App) and u.sym == t.sym:
                stack.extend(u.args)
            else:
                elems.append(u)
        elems.sort(key=term_key)
        c = _rebuild_ac(t.sym, elems)
    elif args == t.args:
        c = t
    else:
        c = App(t.sym, args)
    t._canon = c
    if isinstance(c, App):
        c._canon = c
    return c


def ac_equal(s: Term, t: Term) -> bool:
    """True iff s and t are equal modulo associativity/commutativity."""
    return s is t or ac_canonical(s) == ac_canonical(t)


def substitute(t: Term, sigma: Mapping[str, Term]) -> Term:
    """Simultaneous replacement of variables; first-order, so capture-free."""
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args:
        return t
    args = tuple(substitute(a, sigma) for a in t.args)
    return t if args == t.args else App(t.sym, args)


class Precedence:
    """A strict partial order on symbol names, stored transitively closed."""

    __slots__ = ("pairs", "_succ")

    def __init__(self, pairs: Iterable[tuple[str, str]] = ()):
        succ: dict[str, set[str]] = {}
        for f, g in pairs:
            succ.setdefault(f, set()).add(g)
        # Warshall-style closure over the mentioned names
        names = set(succ)
        for gs in succ.values():
            names |= gs
        changed = True
        while changed:
            changed = False
            for f in names:
                below = succ.get(f)
                if not below:
                    continue
                extra = set()
                for g in below:
                    extra |= succ.get(g, set())
                if not extra <= below:
                    below |= extra
                    changed = True
        for f in names:
            if f in succ.get(f, ()):
                raise InvalidParamsError(f"precedence has a cycle through {f!r}")
        self._succ = {f: frozenset(g) for f, g in succ.items() if g}
        self.pairs = frozenset((f, g) for f, gs in self._succ.items() for g in gs)

    def gt(self, f: str, g: str) -> bool:
        return g in self._succ.get(f, ())

    def geq(self, f: str, g: str) -> bool:
        return f == g or self.gt(f, g)

    def is_total(self, names: Iterable[str]) -> bool:
        names = list(names)
        return all(
            f == g or self.gt(f, g) or self.gt(g, f)
            for f in names
            for g in names
        )

    def is_minimal(self, name: str) -> bool:
        """True iff nothing is strictly below name."""
        return not self._succ.get(name)

    def greatest(self, names: Iterable[str]) -> Optional[str]:
        """The symbol strictly above every other one, if any."""
        names = list(names)
        for f in names:
            if all(g == f or self.gt(f, g) for g in names):
                return f
        return None

    def key(self) -> tuple:
        return tuple(sorted(self.pairs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Precedence) and other.pairs == self.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        inner = ", ".join(f"{f}>{g}" for f, g in sorted(self.pairs))
        return f"Precedence({inner})"


class WeightFn:
    """Per-symbol weights with a positive variable weight w0 and optional
    subterm coefficients.

    Invariants enforced here: w0 > 0, w(c) >= w0 for constants, all weights
    non-negative, all subterm coefficients positive, and coefficient 1 on
    both arguments of every AC symbol.
    """

    __slots__ = ("signature", "w", "w0", "sc")

    def __init__(
        self,
        signature: Signature,
        w: Mapping[str, int],
        w0: int,
        sc: Optional[Mapping[tuple[str, int], int]] = None,
        default: Optional[int] = None,
    ):
        if w0 <= 0:
            raise InvalidParamsError(f"w0 must be positive, got {w0}")
        weights: dict[str, int] = {}
        for name in w:
            if name not in signature:
                raise UndeclaredSymbolError(f"weight given for unknown symbol {name!r}")
        for sym in signature:
            if sym.name in w:
                weights[sym.name] = w[sym.name]
            elif default is not None:
                weights[sym.name] = default
            else:
                raise InvalidParamsError(f"no weight for symbol {sym.name!r}")
            wf = weights[sym.name]
            if wf < 0:
                raise InvalidParamsError(f"negative weight for {sym.name!r}")
            if sym.arity == 0 and wf < w0:
                raise InvalidParamsError(
                    f"constant {sym.name!r} has weight {wf} < w0 = {w0}"
                )
        coeffs: dict[tuple[str, int], int] = {}
        for (name, i), v in (sc or {}).items():
            sym = signature.get(name)
            if not 1 <= i <= sym.arity:
                raise InvalidParamsError(f"sc position {i} out of range for {name!r}")
            if v <= 0:
                raise InvalidParamsError(f"sc({name},{i}) must be positive")
            if sym.is_ac and v != 1:
                raise InvalidParamsError(f"sc must be 1 on AC symbol {name!r}")
            if v != 1:
                coeffs[(name, i)] = v
        self.signature = signature
        self.w = weights
        self.w0 = w0
        self.sc = coeffs

    def weight_of(self, sym: Symbol) -> int:
        try:
            return self.w[sym.name]
        except KeyError:
            raise UndeclaredSymbolError(f"symbol {sym.name!r} has no weight") from None

    def coeff(self, sym: Symbol, i: int) -> int:
        """Subterm coefficient of the i-th argument (1-based), default 1."""
        return self.sc.get((sym.name, i), 1)

    @property
    def trivial_sc(self) -> bool:
        return not self.sc

    def key(self) -> tuple:
        return (tuple(sorted(self.w.items())), self.w0, tuple(sorted(self.sc.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightFn) and other.key() == self.key()

    def __repr__(self) -> str:
        return f"WeightFn(w={self.w}, w0={self.w0}, sc={self.sc})"


def weight(t: Term, wf: WeightFn) -> int:
    """Weight of a term: w0 on variables, w(f) + sum sc(f,i)*weight(t_i)
    on applications."""
    if isinstance(t, Var):
        return wf.w0
    acc = wf.weight_of(t.sym)
    for i, a in enumerate(t.args, start=1):
        acc += wf.coeff(t.sym, i) * weight(a, wf)
    return acc


def vc(x: str, t: Term, wf: WeightFn) -> int:
    """Variable coefficient of x in t: the multiplier x receives in the
    weight polynomial of t."""
    if isinstance(t, Var):
        return 1 if t.name == x else 0
    acc = 0
    for i, a in enumerate(t.args, start=1):
        acc += wf.coeff(t.sym, i) * vc(x, a, wf)
    return acc


def vc_counter(t: Term, wf: WeightFn) -> Counter:
    """All variable coefficients of t at once."""
    if isinstance(t, Var):
        return Counter({t.name: 1})
    out: Counter = Counter()
    for i, a in enumerate(t.args, start=1):
        k = wf.coeff(t.sym, i)
        for name, n in vc_counter(a, wf).items():
            out[name] += k * n
    return out


def admissible(p: Precedence, wf: WeightFn) -> bool:
    """True iff w0 > 0, constants weigh at least w0, and every unary symbol
    of weight zero is above all other symbols in the precedence."""
    if wf.w0 <= 0:
        return False
    names = [s.name for s in wf.signature]
    for sym in wf.signature:
        if sym.arity == 0 and wf.weight_of(sym) < wf.w0:
            return False
        if sym.arity == 1 and wf.weight_of(sym) == 0:
            if not all(g == sym.name or p.gt(sym.name, g) for g in names):
                return False
    return True


@dataclass(frozen=True)
class OrderParams:
    """Everything an order instance needs: precedence, weights, and the
    lex/mul status map used by the path orders (defaults to lex)."""

    precedence: Precedence
    weights: WeightFn
    status: Mapping[str, str] = field(default_factory=dict)

    @property
    def signature(self) -> Signature:
        return self.weights.signature

    def status_of(self, name: str) -> str:
        return self.status.get(name, "lex")

    def key(self) -> tuple:
        return (
            self.precedence.key(),
            self.weights.key(),
            tuple(sorted(self.status.items())),
        )


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{format_term(self.lhs)} -> {format_term(self.rhs)}"


@dataclass(frozen=True)
class Trs:
    """A named list of rewrite rules over a signature with AC symbols."""

    signature: Signature
    rules: tuple[Rule, ...]
    name: str = ""

    def __post_init__(self) -> None:
        for rule in self.rules:
            for t in (rule.lhs, rule.rhs):
                for u in subterms(t):
                    if isinstance(u, App) and self.signature.get(u.sym.name) != u.sym:
                        raise SignatureError(
                            f"rule {rule} uses {u.sym!r} not in the signature"
                        )

    def reversed(self) -> "Trs":
        return Trs(
            self.signature,
            tuple(Rule(r.rhs, r.lhs) for r in self.rules),
            name=self.name + "-reversed" if self.name else "",
        )
