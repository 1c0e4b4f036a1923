"""Text syntax for linear forms, constraints and substitutions.

Forms are integer combinations of ``x, y, z`` such as ``2x-3y+z`` or
``-x + 4*z``.  Constraints compare two forms (``x <= z - y``) and may be
chained (``0 < x < y < z``); several are separated by commas or ``&``.
Whitespace is ignored.  Only homogeneous constraints are accepted.
"""

from __future__ import annotations

import re
from typing import Optional

from .algebra import Ineq, LinForm, Region
from .expansion import Substitution

__all__ = [
    "ParseError",
    "InhomogeneousError",
    "parse_form",
    "parse_constraints",
    "parse_region",
    "parse_substitution",
    "format_region",
]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")

    def pretty(self) -> str:
        return f"{self.message}\n  {self.text}\n  {' ' * self.pos}^"


class InhomogeneousError(ParseError):
    """A constraint with a nonzero constant term."""


_TOKEN = re.compile(r"\s*(?:(\d+)|([xyzXYZ])|(<=|>=|<|>|==|=)|([-+*(),&]))")
_VARS = {"x": 0, "y": 1, "z": 2}


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                p = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[p]!r}", text, p)
            start = m.start(m.lastindex)
            kind = ("int", "var", "rel", "sym")[m.lastindex - 1]
            self.toks.append((kind, m.group(m.lastindex).lower(), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self) -> tuple[str, str, int]:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return t

    def expect(self, value: str) -> None:
        t = self.next()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1]!r}", self.text, t[2])

    def pos(self) -> int:
        t = self.peek()
        return t[2] if t else len(self.text)


def _affine(lx: _Lexer) -> tuple[list[int], int]:
    """Parse ``[+-] term ([+-] term)*``; returns (coefficients, constant)."""
    coefs = [0, 0, 0]
    const = 0
    first = True
    while True:
        t = lx.peek()
        sign = 1
        if t is not None and t[1] in "+-" and t[0] == "sym":
            lx.next()
            sign = -1 if t[1] == "-" else 1
        elif not first:
            break
        t = lx.peek()
        if t is None:
            raise ParseError("expected a term", lx.text, len(lx.text))
        if t[0] == "int":
            lx.next()
            k = int(t[1])
            nt = lx.peek()
            if nt is not None and nt[1] == "*":
                lx.next()
                nt = lx.peek()
                if nt is None or nt[0] != "var":
                    raise ParseError("expected a variable after '*'", lx.text, lx.pos())
            if nt is not None and nt[0] == "var":
                lx.next()
                coefs[_VARS[nt[1]]] += sign * k
            else:
                const += sign * k
        elif t[0] == "var":
            lx.next()
            coefs[_VARS[t[1]]] += sign
        else:
            raise ParseError(f"expected a term, found {t[1]!r}", lx.text, t[2])
        first = False
        t = lx.peek()
        if t is None or not (t[0] == "sym" and t[1] in "+-"):
            break
    return coefs, const


def parse_form(text: str) -> LinForm:
    lx = _Lexer(text)
    start = lx.pos()
    coefs, const = _affine(lx)
    if lx.peek() is not None:
        t = lx.peek()
        raise ParseError(f"unexpected {t[1]!r}", text, t[2])
    if const:
        raise InhomogeneousError("constant term in a linear form", text, start)
    return LinForm(*coefs)


def _constraint_chain(lx: _Lexer) -> list[Ineq]:
    start = lx.pos()
    sides = [_affine(lx)]
    rels = []
    while lx.peek() is not None and lx.peek()[0] == "rel":
        rels.append(lx.next())
        sides.append(_affine(lx))
    if not rels:
        raise ParseError("expected a comparison", lx.text, lx.pos())
    out = []
    for (lhs, lc), (kind, rel, rpos), (rhs, rc) in zip(sides, rels, sides[1:]):
        if lc != rc:
            raise InhomogeneousError("constraint has a constant term", lx.text, start)
        diff = LinForm(*(a - b for a, b in zip(lhs, rhs)))
        if diff.is_zero():
            raise ParseError("constraint compares a form with itself", lx.text, rpos)
        if rel in ("=", "=="):
            out.extend((Ineq.ge(diff), Ineq.le(diff)))
        else:
            out.append({">=": Ineq.ge, ">": Ineq.gt, "<=": Ineq.le, "<": Ineq.lt}[rel](diff))
    return out


def parse_constraints(text: str) -> list[Ineq]:
    """Constraints separated by ``,`` or ``&``; chains like ``0<x<y<z`` allowed."""
    lx = _Lexer(text)
    if lx.peek() is None:
        return []
    out = _constraint_chain(lx)
    while lx.peek() is not None:
        t = lx.next()
        if t[1] not in (",", "&"):
            raise ParseError(f"unexpected {t[1]!r}", text, t[2])
        out.extend(_constraint_chain(lx))
    return out


def parse_region(text: str) -> Region:
    return Region(parse_constraints(text))


def parse_substitution(text: str) -> Substitution:
    """``(f1, f2, f3)``; parentheses optional."""
    lx = _Lexer(text)
    paren = lx.peek() is not None and lx.peek()[1] == "("
    if paren:
        lx.next()
    forms = []
    for k in range(3):
        start = lx.pos()
        coefs, const = _affine(lx)
        if const:
            raise InhomogeneousError("constant term in a stack expression", text, start)
        forms.append(LinForm(*coefs))
        if k < 2:
            lx.expect(",")
    if paren:
        lx.expect(")")
    if lx.peek() is not None:
        t = lx.peek()
        raise ParseError(f"unexpected {t[1]!r}", text, t[2])
    return Substitution(*forms)


def format_region(r: Region) -> str:
    return ", ".join(f"{c.form} {'>' if c.strict else '>='} 0" for c in sorted(r.constraints))
