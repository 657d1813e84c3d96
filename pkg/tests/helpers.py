"""Shared builders and sampling utilities for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from sullivan.algebra import Element, FreeGradedAlgebra, Generator
from sullivan.calculus import CDGA
from sullivan.models import Recipe, build


def algebra_v3_sv2() -> FreeGradedAlgebra:
    return FreeGradedAlgebra([Generator("v", 3), Generator("sv", 2)])


def algebra_v2_w3() -> FreeGradedAlgebra:
    return FreeGradedAlgebra([Generator("v", 2), Generator("w", 3)])


def algebra_yz3() -> FreeGradedAlgebra:
    return FreeGradedAlgebra([Generator("y", 3), Generator("z", 3)])


def even_sphere_model(n: int = 1) -> CDGA:
    return build(Recipe("even_sphere", (n,)))


def cpn_model(n: int) -> CDGA:
    return build(Recipe("truncated_poly", (2, n)))


def s3_model() -> CDGA:
    return build(Recipe("odd_sphere", (1,)))


def s3s3_model() -> CDGA:
    return build(Recipe("product", (Recipe("odd_sphere", (1,)), Recipe("odd_sphere", (1,)))))


def builtin_models() -> list[tuple[str, CDGA]]:
    """The model library the acceptance criteria quantify over."""
    return [
        ("odd_sphere(1)", build(Recipe("odd_sphere", (1,)))),
        ("odd_sphere(2)", build(Recipe("odd_sphere", (2,)))),
        ("even_sphere(1)", build(Recipe("even_sphere", (1,)))),
        ("even_sphere(2)", build(Recipe("even_sphere", (2,)))),
        ("truncated_poly(2,2)", build(Recipe("truncated_poly", (2, 2)))),
        ("truncated_poly(2,3)", build(Recipe("truncated_poly", (2, 3)))),
        ("truncated_poly(4,1)", build(Recipe("truncated_poly", (4, 1)))),
        ("truncated_poly(8,2)", build(Recipe("truncated_poly", (8, 2)))),
        ("h_space(3,3,5)", build(Recipe("h_space", (3, 3, 5)))),
        ("s3xs3", s3s3_model()),
    ]


def brute_force_basis_count(degrees: list[int], n: int) -> int:
    """Independent monomial count: enumerate exponent vectors directly."""
    ranges = []
    for d in degrees:
        top = 1 if d % 2 else (n // d if d else 0)
        ranges.append(range(top + 1))
    count = 0
    for exps in itertools.product(*ranges):
        if sum(e * d for e, d in zip(exps, degrees)) == n:
            count += 1
    return count


def random_monomial(rng: random.Random, algebra: FreeGradedAlgebra, max_degree: int) -> Element:
    """A random nonzero basis monomial of degree <= max_degree."""
    degrees = [n for n in range(max_degree + 1) if algebra.basis_in_degree(n)]
    n = rng.choice(degrees)
    word = rng.choice(algebra.basis_in_degree(n))
    return Element(algebra, {word: Fraction(1)})


def random_element(rng: random.Random, algebra: FreeGradedAlgebra, degree: int,
                   max_terms: int = 3) -> Element:
    """A random homogeneous element of the given degree (possibly zero)."""
    basis = algebra.basis_in_degree(degree)
    out = algebra.zero()
    if not basis:
        return out
    for _ in range(rng.randint(1, max_terms)):
        word = rng.choice(basis)
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        out = out + Element(algebra, {word: coeff})
    return out
