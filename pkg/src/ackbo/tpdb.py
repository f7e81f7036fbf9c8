"""Reading and writing rewrite systems in the legacy competition format.

Supported sections: (VAR ...), (THEORY (AC f) ...), (RULES ...), and
(COMMENT ...); unknown sections are skipped.  Terms may use prefix
notation f(x,y) or infix notation for operator-like symbol names such as
x + y; mixing two different infix symbols without parentheses is an
error.  Arities are inferred from use and checked for consistency.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .terms import (
    App,
    Rule,
    Signature,
    Symbol,
    Term,
    TermOrderError,
    Trs,
    Var,
    format_term,
    vars_of,
)


class TrsParseError(TermOrderError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


_OP_CHARS = set("+*∘•·⊕⊗×&|^%~$@!?:")
_IDENT_EXTRA = set("_#'.")


@dataclass(frozen=True)
class _Tok:
    kind: str  # lpar rpar comma arrow ident op
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch == "(":
            toks.append(_Tok("lpar", ch, line, start_col))
            i += 1
            col += 1
        elif ch == ")":
            toks.append(_Tok("rpar", ch, line, start_col))
            i += 1
            col += 1
        elif ch == ",":
            toks.append(_Tok("comma", ch, line, start_col))
            i += 1
            col += 1
        elif text.startswith("->", i):
            toks.append(_Tok("arrow", "->", line, start_col))
            i += 2
            col += 2
        elif ch.isalnum() or ch in _IDENT_EXTRA:
            j = i
            while j < n and (text[j].isalnum() or text[j] in _IDENT_EXTRA):
                j += 1
            toks.append(_Tok("ident", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch in _OP_CHARS:
            j = i
            while j < n and text[j] in _OP_CHARS:
                j += 1
            toks.append(_Tok("op", text[i:j], line, start_col))
            col += j - i
            i = j
        else:
            raise TrsParseError(f"unexpected character {ch!r}", line, start_col)
    return toks


@dataclass
class _Raw:
    """Parse tree before arity inference: (name, args) or a bare name."""

    name: str
    args: Optional[list["_Raw"]]  # None for a bare atom
    line: int
    col: int


class _TermParser:
    def __init__(self, toks: Sequence[_Tok], pos: int = 0):
        self.toks = toks
        self.pos = pos

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise TrsParseError("unexpected end of input")
        self.pos += 1
        return tok

    def parse_term(self) -> _Raw:
        left = self.parse_primary()
        tok = self.peek()
        if tok is None or tok.kind != "op":
            return left
        opname = tok.text
        operands = [left]
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "op":
                break
            if tok.text != opname:
                raise TrsParseError(
                    f"mixed infix symbols {opname!r} and {tok.text!r} need parentheses",
                    tok.line,
                    tok.col,
                )
            self.take()
            operands.append(self.parse_primary())
        out = operands[-1]
        for operand in reversed(operands[:-1]):
            out = _Raw(opname, [operand, out], tok.line if tok else 0, 0)
        return out

    def parse_primary(self) -> _Raw:
        tok = self.take()
        if tok.kind == "lpar":
            inner = self.parse_term()
            closing = self.take()
            if closing.kind != "rpar":
                raise TrsParseError("expected ')'", closing.line, closing.col)
            return inner
        if tok.kind not in ("ident", "op"):
            raise TrsParseError(f"expected a term, got {tok.text!r}", tok.line, tok.col)
        name = tok.text
        nxt = self.peek()
        if nxt is not None and nxt.kind == "lpar":
            self.take()
            args: list[_Raw] = []
            if self.peek() is not None and self.peek().kind == "rpar":
                self.take()
                return _Raw(name, [], tok.line, tok.col)
            while True:
                args.append(self.parse_term())
                sep = self.take()
                if sep.kind == "rpar":
                    break
                if sep.kind != "comma":
                    raise TrsParseError(
                        f"expected ',' or ')', got {sep.text!r}", sep.line, sep.col
                    )
            return _Raw(name, args, tok.line, tok.col)
        return _Raw(name, None, tok.line, tok.col)


class _SymbolTable:
    def __init__(self, variables: set[str], ac_names: set[str]):
        self.variables = variables
        self.ac_names = ac_names
        self.arities: dict[str, tuple[int, int, int]] = {}  # name -> (arity, line, col)

    def register(self, raw: _Raw) -> None:
        if raw.args is None and raw.name in self.variables:
            return
        if raw.name in self.variables:
            raise TrsParseError(
                f"variable {raw.name!r} used with arguments", raw.line, raw.col
            )
        arity = 0 if raw.args is None else len(raw.args)
        seen = self.arities.get(raw.name)
        if seen is not None and seen[0] != arity:
            raise TrsParseError(
                f"symbol {raw.name!r} used with arity {arity} but "
                f"previously with arity {seen[0]} (line {seen[1]})",
                raw.line,
                raw.col,
            )
        self.arities.setdefault(raw.name, (arity, raw.line, raw.col))
        for a in raw.args or ():
            self.register(a)

    def signature(self) -> Signature:
        for ac in self.ac_names:
            seen = self.arities.get(ac)
            if seen is None:
                self.arities[ac] = (2, 0, 0)
            elif seen[0] != 2:
                raise TrsParseError(
                    f"AC symbol {ac!r} must be binary, seen arity {seen[0]}",
                    seen[1],
                    seen[2],
                )
        return Signature(
            Symbol(name, arity, is_ac=name in self.ac_names)
            for name, (arity, _, _) in self.arities.items()
        )

    def build(self, raw: _Raw, sig: Signature) -> Term:
        if raw.args is None and raw.name in self.variables:
            return Var(raw.name)
        return App(sig.get(raw.name), tuple(self.build(a, sig) for a in raw.args or ()))


def parse_term(
    text: str,
    variables: Iterable[str] = (),
    ac_names: Iterable[str] = (),
    auto_ac_operators: bool = False,
) -> tuple[Term, Signature]:
    """Parse one term, inferring the signature from use.

    With auto_ac_operators, every binary symbol written with operator
    characters is treated as AC unless ac_names says otherwise.
    """
    toks = _tokenize(text)
    parser = _TermParser(toks)
    raw = parser.parse_term()
    if parser.peek() is not None:
        tok = parser.peek()
        raise TrsParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    table = _SymbolTable(set(variables), set(ac_names))
    table.register(raw)
    if auto_ac_operators:
        for name, (arity, _, _) in table.arities.items():
            if arity == 2 and not set(name) <= _IDENT_CHARS_SAFE:
                table.ac_names.add(name)
    sig = table.signature()
    return table.build(raw, sig), sig


_IDENT_CHARS_SAFE = set(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
) | _IDENT_EXTRA


def parse_terms(
    texts: Sequence[str],
    variables: Iterable[str] = (),
    ac_names: Iterable[str] = (),
    auto_ac_operators: bool = False,
) -> tuple[list[Term], Signature]:
    """Parse several terms over one shared inferred signature."""
    raws = []
    for text in texts:
        parser = _TermParser(_tokenize(text))
        raws.append(parser.parse_term())
        if parser.peek() is not None:
            tok = parser.peek()
            raise TrsParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    table = _SymbolTable(set(variables), set(ac_names))
    for raw in raws:
        table.register(raw)
    if auto_ac_operators:
        for name, (arity, _, _) in table.arities.items():
            if arity == 2 and not set(name) <= _IDENT_CHARS_SAFE:
                table.ac_names.add(name)
    sig = table.signature()
    return [table.build(raw, sig) for raw in raws], sig


def parse_trs(text: str, name: str = "") -> Trs:
    """Parse a rewrite system in the legacy competition format."""
    toks = _tokenize(text)
    pos = 0
    variables: set[str] = set()
    ac_names: set[str] = set()
    raw_rules: list[tuple[_Raw, _Raw]] = []

    def expect(kind: str) -> _Tok:
        nonlocal pos
        if pos >= len(toks):
            raise TrsParseError("unexpected end of input")
        tok = toks[pos]
        if tok.kind != kind:
            raise TrsParseError(f"expected {kind}, got {tok.text!r}", tok.line, tok.col)
        pos += 1
        return tok

    while pos < len(toks):
        expect("lpar")
        if pos >= len(toks):
            raise TrsParseError("unexpected end of input")
        head = toks[pos]
        pos += 1
        section = head.text.upper() if head.kind == "ident" else ""
        if section == "VAR":
            while pos < len(toks) and toks[pos].kind in ("ident", "op"):
                variables.add(toks[pos].text)
                pos += 1
            expect("rpar")
        elif section == "THEORY":
            while pos < len(toks) and toks[pos].kind == "lpar":
                pos += 1
                kind_tok = toks[pos]
                pos += 1
                if kind_tok.text.upper() != "AC":
                    raise TrsParseError(
                        f"unsupported theory {kind_tok.text!r} (only AC)",
                        kind_tok.line,
                        kind_tok.col,
                    )
                while pos < len(toks) and toks[pos].kind in ("ident", "op"):
                    ac_names.add(toks[pos].text)
                    pos += 1
                expect("rpar")
            expect("rpar")
        elif section == "RULES":
            while pos < len(toks) and toks[pos].kind != "rpar":
                if toks[pos].kind == "comma":
                    pos += 1
                    continue
                parser = _TermParser(toks, pos)
                lhs = parser.parse_term()
                pos = parser.pos
                arrow = expect("arrow")
                parser = _TermParser(toks, pos)
                rhs = parser.parse_term()
                pos = parser.pos
                if lhs.args is None and lhs.name in variables:
                    raise TrsParseError(
                        "left-hand side is a variable", arrow.line, arrow.col
                    )
                raw_rules.append((lhs, rhs))
            expect("rpar")
        else:
            depth = 1
            while pos < len(toks) and depth:
                if toks[pos].kind == "lpar":
                    depth += 1
                elif toks[pos].kind == "rpar":
                    depth -= 1
                pos += 1
            if depth:
                raise TrsParseError("unbalanced parentheses", head.line, head.col)

    table = _SymbolTable(variables, ac_names)
    for lhs, rhs in raw_rules:
        table.register(lhs)
        table.register(rhs)
    sig = table.signature()
    rules = tuple(
        Rule(table.build(lhs, sig), table.build(rhs, sig)) for lhs, rhs in raw_rules
    )
    return Trs(sig, rules, name=name)


def print_trs(trs: Trs) -> str:
    """Render a rewrite system back into the legacy format."""
    var_names = sorted(
        {x for r in trs.rules for x in (*vars_of(r.lhs), *vars_of(r.rhs))}
    )
    lines = []
    if var_names:
        lines.append(f"(VAR {' '.join(var_names)})")
    ac = trs.signature.ac_names
    if ac:
        lines.append(f"(THEORY (AC {' '.join(ac)}))")
    lines.append("(RULES")
    for r in trs.rules:
        lines.append(f"  {format_term(r.lhs)} -> {format_term(r.rhs)}")
    lines.append(")")
    return "\n".join(lines) + "\n"
