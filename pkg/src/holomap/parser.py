"""Recursive descent parsers for the scalar, domain, point, and map grammars.

The accepted language is exactly what the formatters emit, plus optional
whitespace between tokens and INT/INT rational shorthand inside complex
slots. Scalars over Q(sqrt 2) use the exactnum notation (3/2, 0+1*s2).
Errors carry 1-based (line, column) positions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from .domains import Domain, Ellipsoid, HartogsTriangle
from .errors import ParseError
from .exactnum import ExactScalar
from .existence import Permutation
from .maps import (
    BlaschkeProduct,
    Compose,
    EAut,
    H2Aut,
    H2Proper,
    HFpsProper,
    MapExpr,
    Permute,
    PowerMap,
)

_DIGITS = "0123456789"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _position(self) -> Tuple[int, int]:
        line = self.text.count("\n", 0, self.i) + 1
        last = self.text.rfind("\n", 0, self.i)
        return line, self.i - last if last >= 0 else self.i + 1

    def _fail(self, expected: str):
        found = repr(self.text[self.i]) if self.i < len(self.text) else "end of input"
        raise ParseError(self._position(), expected, found)

    def _ws(self):
        while self.i < len(self.text) and self.text[self.i] in " \t\r\n":
            self.i += 1

    def _peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def _peek_in(self, chars: str) -> bool:
        c = self._peek()
        return bool(c) and c in chars

    def _try(self, lit: str) -> bool:
        self._ws()
        if self.text.startswith(lit, self.i):
            self.i += len(lit)
            return True
        return False

    def _lit(self, lit: str):
        if not self._try(lit):
            self._fail(f"'{lit}'")

    def _word(self) -> str:
        self._ws()
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] == "_"):
            self.i += 1
        if self.i == start:
            self._fail("a name")
        return self.text[start:self.i]

    def _digits(self) -> str:
        start = self.i
        while self.i < len(self.text) and self.text[self.i] in _DIGITS:
            self.i += 1
        if self.i == start:
            self._fail("a digit")
        return self.text[start:self.i]

    def _int(self) -> int:
        self._ws()
        start = self.i
        if self._peek_in("+-"):
            self.i += 1
        self._digits()
        return int(self.text[start:self.i])

    def _number(self) -> Tuple[str, bool]:
        """A float literal; returns (text, had_only_int_syntax)."""
        self._ws()
        start = self.i
        if self._peek_in("+-"):
            self.i += 1
        self._digits()
        plain = True
        if self._peek() == ".":
            plain = False
            self.i += 1
            self._digits()
        if self._peek_in("eE"):
            plain = False
            self.i += 1
            if self._peek_in("+-"):
                self.i += 1
            self._digits()
        return self.text[start:self.i], plain

    def _float(self) -> float:
        return float(self._number()[0])

    def _cplx(self) -> complex:
        """FLOAT, FLOATi, FLOAT(+|-)FLOATi, or INT/INT."""
        text, plain = self._number()
        if plain and self._peek() == "/":
            self.i += 1
            den = self._digits()
            return complex(Fraction(int(text), int(den)))
        if self._peek() == "i":
            self.i += 1
            return complex(0.0, float(text))
        if self._peek_in("+-"):
            sign = 1.0 if self._peek() == "+" else -1.0
            self.i += 1
            imag, _ = self._number()
            if self._peek() != "i":
                self._fail("'i'")
            self.i += 1
            return complex(float(text), sign * float(imag))
        return complex(float(text), 0.0)

    def _fraction(self) -> Fraction:
        self._ws()
        start = self.i
        if self._peek_in("+-"):
            self.i += 1
        self._digits()
        num = int(self.text[start:self.i])
        if self._peek() == "/":
            self.i += 1
            return Fraction(num, int(self._digits()))
        return Fraction(num)

    def _scalar(self) -> ExactScalar:
        u = self._fraction()
        if self._peek_in("+-"):
            sign = 1 if self._peek() == "+" else -1
            self.i += 1
            v = self._fraction()
            if not self.text.startswith("*s2", self.i):
                self._fail("'*s2'")
            self.i += 3
            return ExactScalar(u, sign * v)
        return ExactScalar(u)

    def _clist(self) -> Tuple[complex, ...]:
        self._lit("[")
        out: List[complex] = []
        if not self._try("]"):
            out.append(self._cplx())
            while self._try(","):
                out.append(self._cplx())
            self._lit("]")
        return tuple(out)

    def _cmatrix(self) -> Tuple[Tuple[complex, ...], ...]:
        self._lit("[")
        rows: List[Tuple[complex, ...]] = []
        if not self._try("]"):
            rows.append(self._clist())
            while self._try(","):
                rows.append(self._clist())
            self._lit("]")
        return tuple(rows)

    def _int_list(self) -> Tuple[int, ...]:
        self._lit("[")
        out: List[int] = []
        if not self._try("]"):
            out.append(self._int())
            while self._try(","):
                out.append(self._int())
            self._lit("]")
        return tuple(out)

    def _scalar_list(self) -> Tuple[ExactScalar, ...]:
        self._lit("[")
        out: List[ExactScalar] = []
        if not self._try("]"):
            self._ws()
            out.append(self._scalar())
            while self._try(","):
                self._ws()
                out.append(self._scalar())
            self._lit("]")
        return tuple(out)

    def _key(self, name: str):
        self._lit(name)
        self._lit("=")
        self._ws()

    def _map(self) -> MapExpr:
        head = self._word()
        self._lit("(")
        if head == "pow":
            exps = [self._int()]
            while self._try(","):
                exps.append(self._int())
            self._lit(")")
            return PowerMap(tuple(exps))
        if head == "perm":
            images = [self._int()]
            while self._try(","):
                images.append(self._int())
            self._lit(")")
            return Permute(Permutation(tuple(images)))
        if head == "ballaut":
            self._key("a")
            a = self._clist()
            self._lit(",")
            self._key("U")
            U = self._cmatrix()
            self._lit(")")
            n = len(a)
            return EAut((ExactScalar(1),) * n, Permutation.identity(n), a, U, ())
        if head == "eaut":
            self._key("p")
            p = self._scalar_list()
            self._lit(",")
            self._key("sigma")
            images = self._int_list()
            self._lit(",")
            self._key("a")
            a = self._clist()
            self._lit(",")
            self._key("U")
            U = self._cmatrix()
            self._lit(",")
            self._key("zetas")
            zetas = self._clist()
            self._lit(")")
            return EAut(p, Permutation(images), a, U, zetas)
        if head == "h2aut":
            self._key("xi")
            xi = self._cplx()
            self._lit(",")
            self._key("s")
            s = None if self._try("none") else self._int()
            self._lit(",")
            self._key("theta")
            theta = self._float()
            self._lit(",")
            self._key("alpha")
            alpha = self._cplx()
            self._lit(")")
            return H2Aut(xi, s, theta, alpha)
        if head == "h2prop":
            self._key("zeta")
            zeta = self._cplx()
            self._lit(",")
            values = []
            for name in ("xi",):
                self._key(name)
                values.append(self._cplx())
            ints = []
            for name in ("kp", "l", "b", "pp", "qp"):
                self._lit(",")
                self._key(name)
                ints.append(self._int())
            self._lit(",")
            self._key("B")
            zeros = self._clist()
            self._lit(")")
            return H2Proper(zeta, values[0], *ints, BlaschkeProduct(1.0, zeros))
        if head == "hfps":
            self._key("zeta")
            zeta = self._cplx()
            self._lit(",")
            self._key("k")
            k = self._int()
            self._lit(",")
            self._key("inner")
            inner = self._map()
            self._lit(")")
            return HFpsProper(zeta, k, inner)
        if head == "compose":
            parts: List[MapExpr] = []
            if not self._try(")"):
                parts.append(self._map())
                while self._try(","):
                    parts.append(self._map())
                self._lit(")")
            return Compose(tuple(parts))
        self.i -= len(head)
        self._fail("a map constructor")

    def _domain(self) -> Domain:
        self._ws()
        head = self._word()
        self._lit("(")
        if head == "E":
            self._ws()
            p = [self._scalar()]
            while self._try(","):
                self._ws()
                p.append(self._scalar())
            self._lit(")")
            return Ellipsoid(tuple(p))
        if head == "F":
            self._ws()
            p = self._scalar()
            self._lit(";")
            self._ws()
            q = [self._scalar()]
            while self._try(","):
                self._ws()
                q.append(self._scalar())
            self._lit(")")
            return HartogsTriangle(p, tuple(q))
        self.i -= len(head)
        self._fail("'E' or 'F'")

    def _point(self) -> Tuple[complex, ...]:
        self._lit("(")
        out = [self._cplx()]
        while self._try(","):
            out.append(self._cplx())
        self._lit(")")
        return tuple(out)

    def _end(self):
        self._ws()
        if self.i != len(self.text):
            self._fail("end of input")


def parse_scalar(text: str) -> ExactScalar:
    p = _Parser(text)
    p._ws()
    out = p._scalar()
    p._end()
    return out


def parse_domain(text: str) -> Domain:
    p = _Parser(text)
    out = p._domain()
    p._end()
    return out


def parse_map(text: str) -> MapExpr:
    p = _Parser(text)
    out = p._map()
    p._end()
    return out


def parse_point(text: str) -> Tuple[complex, ...]:
    p = _Parser(text)
    out = p._point()
    p._end()
    return out
