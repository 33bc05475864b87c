"""Parser for the bundle-expression language used by the CLI and file formats.

Grammar:

    expr    := term ('+' term)*
    term    := factor ('*' factor)*
    factor  := ('Sym' INT | 'Wedge' INT | 'dual')* primary ('(' INT ')')*
    primary := NAME | WEIGHT | '(' expr ')'
    NAME    := O | U | Uv | R | Rv | W | T | That | Thatv | Ktilde | Ktildev
    WEIGHT  := ('D5' | 'B4') '[' INT (',' INT)* ']'

Postfix twists bind to the whole prefixed factor, so `Sym2 Uv (2)` is the
second symmetric power twisted by 2.  Schur functors apply only to (twists
of) the tautological generators U, Uv, R, Rv.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import bundles, levi
from .bundles import BundleObject, Named, Sum
from .roots import B4_Q4, D5_P4, DomainError

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<int>-?\d+)|(?P<sym>[()\[\],+*]))")

_ATOMS = {
    "O": lambda: bundles.O(),
    "U": bundles.U,
    "Uv": bundles.Uv,
    "R": bundles.R,
    "Rv": bundles.Rv,
    "W": bundles.W,
    "T": bundles.T,
    "That": bundles.That,
    "Thatv": bundles.Thatv,
    "Ktilde": bundles.Ktilde,
    "Ktildev": bundles.Ktildev,
}

_GENERATORS = {
    "D5+": bundles.Uv(),
    "D5-": bundles.U(),
    "B4+": bundles.Rv(),
    "B4-": bundles.R(),
}


class BundleSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass
class _Token:
    kind: str  # "name" | "int" | "sym" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise BundleSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup is None and m.group().strip() == "":
            pos = m.end()
            continue
        kind = m.lastgroup
        if kind is not None:
            out.append(_Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(_Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self, kind: str | None = None, text: str | None = None) -> _Token:
        tok = self.tokens[self.i]
        if kind and tok.kind != kind:
            raise BundleSyntaxError(f"expected {kind}, found {tok.text!r}", tok.pos)
        if text and tok.text != text:
            raise BundleSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> BundleObject:
        obj = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise BundleSyntaxError(f"trailing input {tok.text!r}", tok.pos)
        return obj

    def expr(self) -> BundleObject:
        obj = self.term()
        while self.peek().text == "+":
            self.take()
            rhs = self.term()
            if not (isinstance(obj, Sum) and isinstance(rhs, Sum)):
                raise BundleSyntaxError("direct sums of named objects are not supported", self.peek().pos)
            obj = bundles.direct_sum(obj, rhs)
        return obj

    def term(self) -> BundleObject:
        obj = self.factor()
        while self.peek().text == "*":
            self.take()
            rhs = self.factor()
            if not (isinstance(obj, Sum) and isinstance(rhs, Sum) and obj.space == rhs.space):
                raise BundleSyntaxError("tensor products need two sums in one description", self.peek().pos)
            obj = bundles.tensor(obj, rhs)
        return obj

    def factor(self) -> BundleObject:
        return self._twists(self.prefixed())

    def prefixed(self) -> BundleObject:
        # prefix operators bind before any postfix twist: `Sym2 Uv (2)` is
        # the symmetric square, twisted by 2
        tok = self.peek()
        if tok.kind == "name" and (tok.text == "dual" or _schur_op(tok.text) or tok.text in ("Sym", "Wedge")):
            op = self.take().text
            power = _schur_op(op)
            if op in ("Sym", "Wedge"):
                power = (op, int(self.take("int").text))
            inner = self.prefixed()
            if op == "dual":
                return bundles.dual(inner)
            return _apply_schur(power, inner, tok.pos)
        return self.primary()

    def _twists(self, obj: BundleObject) -> BundleObject:
        while self.peek().text == "(" and self.tokens[self.i + 1].kind == "int":
            self.take()
            k = int(self.take("int").text)
            self.take(text=")")
            obj = bundles.twist(obj, k)
        return obj

    def primary(self) -> BundleObject:
        tok = self.peek()
        if tok.text == "(":
            self.take()
            obj = self.expr()
            self.take(text=")")
            return obj
        if tok.kind == "name":
            if tok.text in ("D5", "B4"):
                return self.weight_literal()
            if tok.text in _ATOMS:
                self.take()
                return _ATOMS[tok.text]()
            raise BundleSyntaxError(f"unknown bundle name {tok.text!r}", tok.pos)
        raise BundleSyntaxError(f"expected a bundle expression, found {tok.text!r}", tok.pos)

    def weight_literal(self) -> Sum:
        datum_tok = self.take("name")
        space = D5_P4 if datum_tok.text == "D5" else B4_Q4
        self.take(text="[")
        coords = [int(self.take("int").text)]
        while self.peek().text == ",":
            self.take()
            coords.append(int(self.take("int").text))
        self.take(text="]")
        if len(coords) != space.rank:
            raise BundleSyntaxError(
                f"{datum_tok.text} weight needs {space.rank} coordinates", datum_tok.pos
            )
        try:
            return bundles.irr(space, tuple(coords))
        except DomainError as e:
            raise BundleSyntaxError(str(e), datum_tok.pos) from None


def _schur_op(text: str) -> tuple[str, int] | None:
    m = re.fullmatch(r"(Sym|Wedge)(\d+)", text)
    if m:
        return m.group(1), int(m.group(2))
    return None


def _apply_schur(power: tuple[str, int], inner: BundleObject, pos: int) -> Sum:
    op, r = power
    if not isinstance(inner, Sum) or len(inner.parts) != 1 or inner.parts[0][1] != 1:
        raise BundleSyntaxError("Schur functors apply only to tautological generators", pos)
    # Schur_r(E(t)) = Schur_r(E)(r*t) for a line-bundle twist of a generator
    for key, gen in _GENERATORS.items():
        t = bundles._twist_delta(gen, inner)
        if t is None:
            continue
        space = gen.space
        base = levi.sym_power(space, r) if op == "Sym" else levi.wedge_power(space, r)
        out = bundles.irr(space, base)
        if key.endswith("-"):
            out = bundles.dual(out)
        return bundles.twist(out, r * t)
    raise BundleSyntaxError("Schur functors apply only to tautological generators", pos)


def parse_bundle(text: str) -> BundleObject:
    """Parse one bundle expression; raises BundleSyntaxError with a position."""
    return _Parser(text).parse()


def parse_collection(text: str, label: str = "") -> list[BundleObject]:
    """One expression per line; '#' starts a comment."""
    objs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            objs.append(parse_bundle(line))
        except BundleSyntaxError as e:
            raise BundleSyntaxError(f"line {lineno}: {e}", e.position) from None
    return objs


def bundle_expr(obj: BundleObject) -> str:
    """A parseable expression for an object, preferring the familiar names."""
    if isinstance(obj, Named):
        return f"{obj.name}({obj.twist})" if obj.twist else obj.name
    pieces = []
    for w, m in obj.parts:
        expr = _irr_expr(obj.space, w)
        pieces.extend([expr] * m)
    return " + ".join(pieces)


def _irr_expr(space, w) -> str:
    tw = " ({})"
    candidates: list[tuple[Sum, str]] = []
    if space == D5_P4:
        candidates.append((bundles.O(), "O"))
        candidates.append((bundles.Uv(), "Uv"))
        candidates.append((bundles.U(), "U"))
        candidates.append((bundles.T(), "T"))
        for r in (2, 3, 4):
            candidates.append((bundles.sym_Uv(r), f"Sym{r} Uv"))
            candidates.append((bundles.wedge_Uv(r), f"Wedge{r} Uv"))
            candidates.append((bundles.sym_U(r), f"Sym{r} U"))
            candidates.append((bundles.wedge_U(r), f"Wedge{r} U"))
    else:
        candidates.append((bundles.O(0, B4_Q4), "O"))
        candidates.append((bundles.Rv(), "Rv"))
        candidates.append((bundles.R(), "R"))
        for r in (2, 3):
            candidates.append((bundles.sym_Rv(r), f"Sym{r} Rv"))
            candidates.append((bundles.wedge_Rv(r), f"Wedge{r} Rv"))
            candidates.append((bundles.sym_R(r), f"Sym{r} R"))
            candidates.append((bundles.wedge_R(r), f"Wedge{r} R"))
    target = bundles.irr(space, w)
    for gen, name in candidates:
        delta = bundles._twist_delta(gen, target)
        if delta is not None:
            return name + (tw.format(delta) if delta else "")
    datum = "D5" if space == D5_P4 else "B4"
    return f"{datum} [{','.join(str(c) for c in w)}]"
