"""Plain-text model descriptions.

A model file declares generators and differentials:

    # truncated polynomial cohomology, one relation
    generator v 2
    generator w 5
    d w = v^3

Statements are `generator <name> <degree>` and `d <name> = <expr>`;
expressions combine rational coefficients (integer or integer/integer),
generator names, + - * ^ and parentheses.  Omitted d lines mean a zero
differential.  Every d target must be declared and every right-hand side
must be homogeneous of degree |generator| + 1.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Element, FreeGradedAlgebra, Generator
from .calculus import CDGA, Derivation, require_valid
from .errors import ModelFileError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([+\-*^()/])|(\S)")


class _ExprParser:
    """Recursive descent over one differential expression."""

    def __init__(self, text: str, line: int, offset: int, algebra: FreeGradedAlgebra):
        self.line = line
        self.algebra = algebra
        self.tokens: list[tuple[str, str, int]] = []  # (kind, text, column)
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            assert m is not None
            column = offset + pos + 1
            if m.group(1):
                self.tokens.append(("int", m.group(1), column))
            elif m.group(2):
                self.tokens.append(("name", m.group(2), column))
            elif m.group(3):
                self.tokens.append(("op", m.group(3), column))
            else:
                raise ModelFileError(f"unexpected character {m.group(4)!r}", line, column)
            pos = m.end()
        self.pos = 0
        self.end_column = offset + len(text) + 1

    def error(self, message: str, column: int | None = None) -> ModelFileError:
        if column is None:
            column = self.tokens[self.pos][2] if self.pos < len(self.tokens) else self.end_column
        return ModelFileError(message, self.line, column)

    def peek_op(self, *ops: str) -> str | None:
        if self.pos < len(self.tokens):
            kind, text, _ = self.tokens[self.pos]
            if kind == "op" and text in ops:
                return text
        return None

    def take(self) -> tuple[str, str, int]:
        if self.pos >= len(self.tokens):
            raise self.error("unexpected end of expression")
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> Element:
        value = self.expr()
        if self.pos < len(self.tokens):
            raise self.error(f"unexpected {self.tokens[self.pos][1]!r}")
        return value

    def expr(self) -> Element:
        sign = 1
        if self.peek_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc - rhs if op == "-" else acc + rhs
        return acc

    def term(self) -> Element:
        acc = self.factor()
        while self.peek_op("*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Element:
        base = self.atom()
        if self.peek_op("^"):
            self.take()
            kind, text, column = self.take()
            if kind != "int":
                raise self.error("exponent must be an integer", column)
            return base ** int(text)
        return base

    def atom(self) -> Element:
        kind, text, column = self.take()
        if kind == "int":
            value = Fraction(int(text))
            if self.peek_op("/"):
                self.take()
                dkind, dtext, dcolumn = self.take()
                if dkind != "int":
                    raise self.error("denominator must be an integer", dcolumn)
                if int(dtext) == 0:
                    raise self.error("division by zero", dcolumn)
                value /= int(dtext)
            return self.algebra.one() * value
        if kind == "name":
            if not self.algebra.has_generator(text):
                raise self.error(f"unknown generator {text!r}", column)
            return self.algebra.gen(text)
        if kind == "op" and text == "(":
            inner = self.expr()
            if not self.peek_op(")"):
                raise self.error("missing closing parenthesis")
            self.take()
            return inner
        if kind == "op" and text == "/":
            raise self.error("'/' is only allowed after an integer coefficient", column)
        raise self.error(f"unexpected {text!r}", column)


def _split_statement(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def parse(text: str, validate: bool = True) -> CDGA:
    """Parse a model file into a CDGA; validate certifies d*d = 0."""
    generators: list[Generator] = []
    declared: dict[str, int] = {}
    d_lines: list[tuple[str, int, str, int]] = []  # (target, line no, expr text, expr offset)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _split_statement(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("generator"):
            parts = stripped.split()
            if len(parts) != 3:
                raise ModelFileError("expected: generator <name> <degree>", lineno, indent + 1)
            _, name, degree_text = parts
            if not _NAME.fullmatch(name):
                raise ModelFileError(f"invalid generator name {name!r}", lineno, indent + 1)
            try:
                degree = int(degree_text)
            except ValueError:
                raise ModelFileError(f"invalid degree {degree_text!r}", lineno, indent + 1) from None
            if degree < 1:
                raise ModelFileError("generator degree must be >= 1", lineno, indent + 1)
            if name in declared:
                raise ModelFileError(f"generator {name!r} declared twice", lineno, indent + 1)
            declared[name] = lineno
            generators.append(Generator(name, degree))
        elif stripped == "d" or stripped.startswith("d ") or stripped.startswith("d\t"):
            m = re.match(r"d\s+([A-Za-z_][A-Za-z0-9_]*)\s*=", stripped)
            if m is None:
                raise ModelFileError("expected: d <name> = <expr>", lineno, indent + 1)
            target = m.group(1)
            expr_text = stripped[m.end():]
            offset = indent + m.end()
            d_lines.append((target, lineno, expr_text, offset))
        else:
            raise ModelFileError(f"unrecognized statement {stripped.split()[0]!r}", lineno, indent + 1)

    if not generators:
        raise ModelFileError("model declares no generators", 1, 1)
    algebra = FreeGradedAlgebra(generators)
    values: dict[str, Element] = {g.name: algebra.zero() for g in generators}
    seen: set[str] = set()
    for target, lineno, expr_text, offset in d_lines:
        if target not in declared:
            raise ModelFileError(f"d target {target!r} is not a declared generator", lineno, 1)
        if target in seen:
            raise ModelFileError(f"duplicate d line for {target!r}", lineno, 1)
        seen.add(target)
        value = _ExprParser(expr_text, lineno, offset, algebra).parse()
        expected = algebra.generator(target).degree + 1
        if not value.is_zero():
            if not value.is_homogeneous():
                raise ModelFileError(
                    f"d {target} is not homogeneous", lineno, offset + 1
                )
            if value.degree() != expected:
                raise ModelFileError(
                    f"d {target} has degree {value.degree()}, expected {expected}",
                    lineno,
                    offset + 1,
                )
        values[target] = value

    model = CDGA(algebra, Derivation(algebra, 1, values))
    if validate:
        require_valid(model)
    return model


def parse_path(path: str, validate: bool = True) -> CDGA:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read(), validate=validate)


def _coefficient_prefix(coeff: Fraction) -> str:
    return "" if coeff == 1 else f"{coeff}*"


def emit(model: CDGA, header: tuple[str, ...] = ()) -> str:
    """Canonical text for a model; parse(emit(m)) reproduces m exactly."""
    lines = [f"# {text}" for text in header]
    for g in model.algebra.generators:
        lines.append(f"generator {g.name} {g.degree}")
    for g in model.algebra.generators:
        value = model.d_of(g.name)
        if value.is_zero():
            continue
        lines.append(f"d {g.name} = {_emit_element(value)}")
    return "\n".join(lines) + "\n"


def _emit_element(e: Element) -> str:
    chunks: list[str] = []
    for word, coeff in e.sorted_terms():
        body = e.algebra.word_str(word)
        magnitude = abs(coeff)
        if word == ():
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        if not chunks:
            chunks.append(text if coeff > 0 else f"-{text}")
        else:
            chunks.append(f"+ {text}" if coeff > 0 else f"- {text}")
    return " ".join(chunks) if chunks else "0"
