"""Truncated Poincare series and rational-function expansion.

Coefficients are integers throughout: Betti numbers are dimensions, and
rational functions are expanded by exact integer long division with a check
that every coefficient comes out integral.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import PoleAtZero, RationalFormError

Poly = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedSeries:
    coefficients: tuple[int, ...]

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Compare on the overlapping prefix of the two truncations."""
        n = min(len(self.coefficients), len(other.coefficients))
        return self.coefficients[:n] == other.coefficients[:n]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


@dataclass(frozen=True)
class RationalFunctionForm:
    numerator: Poly
    denominator: Poly


def series_from_report(report) -> TruncatedSeries:
    """The Poincare series of a cohomology report: c_n = b_n."""
    return TruncatedSeries(tuple(report.betti))


def multiply_series(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the shorter input."""
    n = min(len(a.coefficients), len(b.coefficients))
    out = [0] * n
    for i in range(n):
        for j in range(n - i):
            out[i + j] += a.coefficients[i] * b.coefficients[j]
    return TruncatedSeries(tuple(out))


def expand_rational(f: RationalFunctionForm, max_degree: int) -> TruncatedSeries:
    """Power series coefficients of numerator/denominator up to max_degree."""
    num, den = f.numerator, f.denominator
    if not den or den[0] == 0:
        raise PoleAtZero("denominator vanishes at z = 0")
    coeffs: list[int] = []
    for k in range(max_degree + 1):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * coeffs[k - j]
        q, r = divmod(acc, den[0])
        if r:
            raise RationalFormError(
                f"coefficient of z^{k} is {acc}/{den[0]}, not an integer"
            )
        coeffs.append(q)
    return TruncatedSeries(tuple(coeffs))


# -- the input grammar ------------------------------------------------------------
#
# Integer-coefficient polynomials in z with + - * ^ ( ), and at most one
# division, at the top level, separating numerator from denominator.

_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|([+\-*^()/])|(\S))")


def _poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _poly_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def _poly_pow(a: Poly, e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def _poly_trim(a: Poly) -> Poly:
    n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return a[:n]


class _PolyParser:
    def __init__(self, text: str):
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(4):
                raise RationalFormError(f"unexpected character {m.group(4)!r}")
            token = m.group(1) or m.group(2) or m.group(3)
            if token:
                self.tokens.append(token)
            pos = m.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise RationalFormError("unexpected end of input")
        self.pos += 1
        return token

    def parse(self) -> Poly:
        poly = self.expr()
        if self.peek() is not None:
            raise RationalFormError(f"unexpected token {self.peek()!r}")
        return poly

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in {"+", "-"}:
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = _poly_neg(acc)
        while self.peek() in {"+", "-"}:
            op = self.take()
            rhs = self.term()
            acc = _poly_add(acc, _poly_neg(rhs) if op == "-" else rhs)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _poly_mul(acc, self.factor())
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp_token = self.take()
            if not exp_token.isdigit():
                raise RationalFormError(f"exponent must be an integer, got {exp_token!r}")
            return _poly_pow(base, int(exp_token))
        return base

    def atom(self) -> Poly:
        token = self.take()
        if token.isdigit():
            return (int(token),)
        if token == "z":
            return (0, 1)
        if token == "(":
            inner = self.expr()
            if self.take() != ")":
                raise RationalFormError("missing closing parenthesis")
            return inner
        if token == "/":
            raise RationalFormError("division is only allowed once, at the top level")
        raise RationalFormError(f"unexpected token {token!r}")


def parse_rational(text: str) -> RationalFunctionForm:
    """Parse "<poly>" or "<poly>/<poly>" with the single slash at depth zero."""
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split is not None:
                raise RationalFormError("more than one top-level division")
            split = i
    if split is None:
        num_text, den_text = text, "1"
    else:
        num_text, den_text = text[:split], text[split + 1 :]
    num = _poly_trim(_PolyParser(num_text).parse())
    den = _poly_trim(_PolyParser(den_text).parse())
    if not den:
        raise RationalFormError("denominator is identically zero")
    if den[0] == 0:
        raise PoleAtZero("denominator vanishes at z = 0")
    return RationalFunctionForm(num, den)
