"""Built-in model library and constructive algorithms.

Recipes cover the standard small models: spheres, truncated polynomial
cohomology (projective spaces), zero-differential algebras, and tensor
products of other recipes.  On top of those sit the inductive relative
model of the multiplication map, the closed-form free-loop cohomology of
truncated polynomial spaces, and the witness-cocycle families showing
unbounded loop-space Betti numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import linalg
from .algebra import Element, FreeGradedAlgebra, Generator, transport, word_length
from .calculus import (
    CDGA,
    Derivation,
    Morphism,
    loop_model,
    make_cdga,
    minimality_check,
    quotient_by_generators,
    rename_generators,
    require_valid,
    suspended_name,
    tensor_cdga,
)
from .errors import NameClash, NotApplicable, WindowTooSmall
from .homology import element_coordinates

# -- recipes ----------------------------------------------------------------------


@dataclass(frozen=True)
class Recipe:
    kind: str
    params: tuple

    def __str__(self) -> str:
        if self.kind == "product":
            return "product(" + ", ".join(str(p) for p in self.params) + ")"
        return f"{self.kind}({', '.join(str(p) for p in self.params)})"


def odd_sphere(n: int) -> Recipe:
    return Recipe("odd_sphere", (n,))


def even_sphere(n: int) -> Recipe:
    return Recipe("even_sphere", (n,))


def truncated_poly(d: int, n: int) -> Recipe:
    return Recipe("truncated_poly", (d, n))


def cpn(n: int) -> Recipe:
    return Recipe("truncated_poly", (2, n))


def h_space(degrees: tuple[int, ...]) -> Recipe:
    return Recipe("h_space", tuple(degrees))


def product(*recipes: Recipe) -> Recipe:
    return Recipe("product", tuple(recipes))


def custom(path: str) -> Recipe:
    return Recipe("custom", (path,))


def build(recipe: Recipe) -> CDGA:
    """Construct the model a recipe describes; parameters are validated."""
    kind, params = recipe.kind, recipe.params
    if kind == "odd_sphere":
        (n,) = params
        if n < 0:
            raise ValueError("odd_sphere needs n >= 0")
        return make_cdga([Generator("v", 2 * n + 1)])
    if kind == "even_sphere":
        (n,) = params
        if n < 1:
            raise ValueError("even_sphere needs n >= 1")
        alg = FreeGradedAlgebra([Generator("v", 2 * n), Generator("w", 4 * n - 1)])
        return make_cdga([], {"w": alg.gen("v") ** 2}, algebra=alg)
    if kind == "truncated_poly":
        d, n = params
        if d < 2 or d % 2 != 0:
            raise ValueError("truncated_poly needs even d >= 2")
        if n < 1:
            raise ValueError("truncated_poly needs n >= 1")
        alg = FreeGradedAlgebra([Generator("v", d), Generator("w", d * (n + 1) - 1)])
        return make_cdga([], {"w": alg.gen("v") ** (n + 1)}, algebra=alg)
    if kind == "h_space":
        if not params:
            raise ValueError("h_space needs at least one degree")
        return make_cdga([Generator(f"x{i + 1}", d) for i, d in enumerate(params)])
    if kind == "product":
        if len(params) < 2:
            raise ValueError("product needs at least two factors")
        factors = []
        for i, sub in enumerate(params):
            model = build(sub)
            mapping = {g.name: f"{g.name}_{i + 1}" for g in model.algebra.generators}
            factors.append(rename_generators(model, mapping))
        out = factors[0]
        for factor in factors[1:]:
            out = tensor_cdga(out, factor)
        return out
    if kind == "custom":
        from . import modelfile

        (path,) = params
        return modelfile.parse_path(path)
    raise ValueError(f"unknown recipe kind {kind!r}")


_RECIPE_ARITY = {
    "odd-sphere": 1,
    "even-sphere": 1,
    "cpn": 1,
    "truncated-poly": 2,
}


def recipe_from_args(name: str, args: list[str]) -> Recipe:
    """Recipe from CLI-style arguments, e.g. ("product", ["odd-sphere:1", ...])."""
    if name == "product":
        if len(args) < 2:
            raise ValueError("product needs at least two factor specs")
        return Recipe("product", tuple(recipe_from_spec(spec) for spec in args))
    if name == "h-space":
        if not args:
            raise ValueError("h-space needs at least one degree")
        return h_space(tuple(_positive_int(a) for a in args))
    if name in _RECIPE_ARITY:
        if len(args) != _RECIPE_ARITY[name]:
            raise ValueError(f"{name} takes {_RECIPE_ARITY[name]} parameter(s)")
        values = [_positive_int(a) if name != "odd-sphere" else _nonneg_int(a) for a in args]
        if name == "odd-sphere":
            return odd_sphere(values[0])
        if name == "even-sphere":
            return even_sphere(values[0])
        if name == "cpn":
            return cpn(values[0])
        return truncated_poly(values[0], values[1])
    raise ValueError(f"unknown recipe {name!r}")


def recipe_from_spec(spec: str) -> Recipe:
    """Recipe from a colon-joined spec like "odd-sphere:1" or "truncated-poly:2:3"."""
    parts = spec.split(":")
    return recipe_from_args(parts[0], parts[1:])


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(f"expected a non-negative integer, got {text}")
    return value


# -- relative model of the multiplication -----------------------------------------


@dataclass(frozen=True)
class MultiplicationModel:
    """Relative model of the multiplication map of a minimal model.

    The carrier holds two renamed copies of every generator plus one
    suspended generator each; phi is the quasi-isomorphism onto the
    diagonal sending both copies to the original and suspensions to zero.
    """

    model: CDGA
    phi: Morphism
    target: CDGA
    base: tuple[str, ...]
    gammas: dict[str, Element]

    def left_copy(self, name: str) -> str:
        return f"{name}_1"

    def right_copy(self, name: str) -> str:
        return f"{name}_2"


def multiplication_model(model: CDGA, max_degree: int | None = None) -> MultiplicationModel:
    """Inductive construction of the multiplication model, truncated at max_degree.

    Processes generators by increasing degree.  For each one the suspended
    generator receives D(sv) = v_1 - v_2 - gamma where gamma solves
    D(gamma) = dv_1 - dv_2 with phi(gamma) = 0 over the decomposable
    monomials in the previously built generators; the solution is the
    deterministic reduced-echelon one.
    """
    require_valid(model)
    violation = minimality_check(model)
    if violation is not None:
        raise ValueError(f"model is not minimal: linear term {violation[1]} at {violation[0].name}")
    for g in model.algebra.generators:
        if g.degree < 2:
            raise ValueError("multiplication model needs generators of degree >= 2")
    if max_degree is None:
        max_degree = max((g.degree for g in model.algebra.generators), default=0)

    kept = [g for g in model.algebra.generators if g.degree <= max_degree]
    target_alg = FreeGradedAlgebra(kept)
    target = CDGA(
        target_alg,
        Derivation(
            target_alg, 1, {g.name: transport(model.d_of(g.name), target_alg) for g in kept}
        ),
    )

    big_gens: list[Generator] = []
    original_degree: dict[str, int] = {}
    for g in kept:
        for name in (f"{g.name}_1", f"{g.name}_2", suspended_name(g.name)):
            original_degree[name] = g.degree
        big_gens.append(Generator(f"{g.name}_1", g.degree))
        big_gens.append(Generator(f"{g.name}_2", g.degree))
        big_gens.append(Generator(suspended_name(g.name), g.degree - 1))
    if len({g.name for g in big_gens}) != len(big_gens):
        raise NameClash("generator names collide under the copy/suspension scheme")
    big = FreeGradedAlgebra(big_gens)

    copy1 = Morphism(target_alg, big, {g.name: big.gen(f"{g.name}_1") for g in kept})
    copy2 = Morphism(target_alg, big, {g.name: big.gen(f"{g.name}_2") for g in kept})

    d_values: dict[str, Element] = {}
    phi_values: dict[str, Element] = {}
    gammas: dict[str, Element] = {}
    processed: set[str] = set()

    for g in kept:
        dv = target.d_of(g.name)
        dv1 = copy1(dv)
        dv2 = copy2(dv)
        d_values[f"{g.name}_1"] = dv1
        d_values[f"{g.name}_2"] = dv2
        phi_values[f"{g.name}_1"] = target_alg.gen(g.name)
        phi_values[f"{g.name}_2"] = target_alg.gen(g.name)

        rhs = dv1 - dv2
        if rhs.is_zero():
            gamma = big.zero()
        else:
            gamma = _solve_gamma(
                big, target_alg, d_values, phi_values, processed, original_degree, g, rhs
            )
        gammas[g.name] = gamma
        d_values[suspended_name(g.name)] = big.gen(f"{g.name}_1") - big.gen(f"{g.name}_2") - gamma
        phi_values[suspended_name(g.name)] = target_alg.zero()
        processed.update((f"{g.name}_1", f"{g.name}_2", suspended_name(g.name)))

    mm = CDGA(big, Derivation(big, 1, d_values))
    phi = Morphism(big, target_alg, phi_values)
    base = tuple(
        name for g in kept for name in (f"{g.name}_1", f"{g.name}_2")
    )
    return MultiplicationModel(mm, phi, target, base, gammas)


def _solve_gamma(big, target_alg, d_values, phi_values, processed, original_degree, g, rhs):
    derivation = Derivation(big, 1, d_values)
    phi = Morphism(big, target_alg, phi_values)
    candidates = [
        w
        for w in big.basis_in_degree(g.degree)
        if word_length(w) >= 2
        and all(
            big.generators[i].name in processed
            and original_degree[big.generators[i].name] < g.degree
            for i, _ in w
        )
    ]
    image_basis = big.basis_in_degree(g.degree + 1)
    phi_basis = target_alg.basis_in_degree(g.degree)
    rows = [[Fraction(0)] * len(candidates) for _ in range(len(image_basis) + len(phi_basis))]
    image_index = {w: i for i, w in enumerate(image_basis)}
    phi_index = {w: i for i, w in enumerate(phi_basis)}
    for col, w in enumerate(candidates):
        mono = Element(big, {w: Fraction(1)})
        for word, coeff in derivation(mono).terms.items():
            rows[image_index[word]][col] = coeff
        for word, coeff in phi(mono).terms.items():
            rows[len(image_basis) + phi_index[word]][col] = coeff
    rhs_vec = element_coordinates(rhs, image_basis) + [Fraction(0)] * len(phi_basis)
    solution = linalg.solve_particular(rows, rhs_vec)
    if solution is None:
        raise WindowTooSmall(
            f"no decomposable correction of degree {g.degree} for generator {g.name!r}"
        )
    out = big.zero()
    for coeff, w in zip(solution, candidates):
        if coeff:
            out = out + Element(big, {w: coeff})
    return out


def collapse_multiplication_model(mm: MultiplicationModel) -> CDGA:
    """Pushout along the multiplication: identify the two copies.

    The result lives on the original generators plus their suspensions and
    is a free-loop-space model of the target.
    """
    target = mm.target
    loop_alg = FreeGradedAlgebra(
        list(target.algebra.generators)
        + [Generator(suspended_name(g.name), g.degree - 1) for g in target.algebra.generators]
    )
    values = {}
    for g in target.algebra.generators:
        values[f"{g.name}_1"] = loop_alg.gen(g.name)
        values[f"{g.name}_2"] = loop_alg.gen(g.name)
        values[suspended_name(g.name)] = loop_alg.gen(suspended_name(g.name))
    rho = Morphism(mm.model.algebra, loop_alg, values)
    d_values = {}
    for g in target.algebra.generators:
        d_values[g.name] = transport(target.d_of(g.name), loop_alg)
        d_values[suspended_name(g.name)] = rho(mm.model.d_of(suspended_name(g.name)))
    return CDGA(loop_alg, Derivation(loop_alg, 1, d_values))


# -- closed-form loop cohomology for truncated polynomial spaces -------------------


@dataclass(frozen=True)
class ClosedFormLoopCohomology:
    """Basis labels with degrees, and the induced dimension vector."""

    d: int
    n: int
    max_degree: int
    entries: tuple[tuple[int, str], ...]
    dims: tuple[int, ...]

    @property
    def all_dims_at_most_one(self) -> bool:
        return all(b <= 1 for b in self.dims)


def loop_cohomology_closed_form(d: int, n: int, max_degree: int) -> ClosedFormLoopCohomology:
    """Enumerate the loop-space cohomology basis of a truncated polynomial space.

    The unit; v^p (sw)^i for 1 <= p <= n; and v^p sv (sw)^i for
    0 <= p <= n-1, listed up to max_degree.  Every degree has dimension
    at most one.
    """
    if d < 2 or d % 2 != 0:
        raise ValueError("need even d >= 2")
    if n < 1:
        raise ValueError("need n >= 1")
    sv_deg = d - 1
    sw_deg = d * (n + 1) - 2
    entries: list[tuple[int, str]] = [(0, "1")]

    def power(name: str, e: int) -> str:
        if e == 0:
            return ""
        return name if e == 1 else f"{name}^{e}"

    for p in range(1, n + 1):
        i = 0
        while p * d + i * sw_deg <= max_degree:
            label = "*".join(x for x in (power("v", p), power("sw", i)) if x)
            entries.append((p * d + i * sw_deg, label))
            i += 1
    for p in range(0, n):
        i = 0
        while p * d + sv_deg + i * sw_deg <= max_degree:
            label = "*".join(x for x in (power("v", p), "sv", power("sw", i)) if x)
            entries.append((p * d + sv_deg + i * sw_deg, label))
            i += 1
    entries.sort()
    dims = [0] * (max_degree + 1)
    for degree, _ in entries:
        dims[degree] += 1
    form = ClosedFormLoopCohomology(d, n, max_degree, tuple(entries), tuple(dims))
    if not form.all_dims_at_most_one:
        raise AssertionError("closed-form degrees collide; enumeration is wrong")
    return form


# -- witness families ---------------------------------------------------------------


@dataclass(frozen=True)
class WitnessEntry:
    k: int
    degree: int
    exponent_pairs: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]
    cocycles_verified: bool
    independent: bool

    @property
    def count(self) -> int:
        return len(self.exponent_pairs)


@dataclass(frozen=True)
class WitnessReport:
    even_gens: tuple[str, ...]
    y: str
    z: str
    period: int
    entries: tuple[WitnessEntry, ...]

    @property
    def all_certified(self) -> bool:
        return all(e.cocycles_verified and e.independent for e in self.entries)


def _loop_base_names(loop: CDGA) -> list[str]:
    """Original generators of a loop model: those with a suspended partner."""
    return [
        g.name
        for g in loop.algebra.generators
        if loop.algebra.has_generator(suspended_name(g.name))
    ]


def vps_witnesses(loop: CDGA, even_gens, y: str, z: str, k_max: int) -> WitnessReport:
    """Monomial cocycle families sx_1...sx_n (sy)^p (sz)^q, k+1 per level k.

    Level k collects the exponent pairs with p|sy| + q|sz| = k lcm(|sy|,|sz|).
    Each instance is certified as a cocycle in the quotient killing the even
    base generators, and each level is certified linearly independent by
    projecting onto the suspended part, where the differential vanishes.
    """
    base = _loop_base_names(loop)
    even_list = sorted(even_gens, key=lambda n: (loop.algebra.generator(n).degree, n))
    for name in even_list:
        if name not in base or loop.algebra.generator(name).degree % 2:
            raise NotApplicable(f"{name!r} is not an even base generator of the loop model")
    for name in (y, z):
        if name not in base or loop.algebra.generator(name).degree % 2 == 0:
            raise NotApplicable(f"{name!r} is not an odd base generator of the loop model")
    if y == z:
        raise NotApplicable("need two distinct odd generators")

    quotient = quotient_by_generators(loop, even_list)
    s_only_alg = FreeGradedAlgebra(
        [g for g in quotient.algebra.generators if g.name not in base]
    )
    project = Morphism(
        quotient.algebra,
        s_only_alg,
        {
            g.name: (s_only_alg.gen(g.name) if g.name not in base else s_only_alg.zero())
            for g in quotient.algebra.generators
        },
    )

    sx = quotient.algebra.one()
    sx_degree = 0
    for name in even_list:
        sx = sx * quotient.algebra.gen(suspended_name(name))
        sx_degree += quotient.algebra.generator(suspended_name(name)).degree
    sy_deg = quotient.algebra.generator(suspended_name(y)).degree
    sz_deg = quotient.algebra.generator(suspended_name(z)).degree
    period = lcm(sy_deg, sz_deg)

    entries = []
    for k in range(k_max + 1):
        degree = sx_degree + k * period
        pairs = []
        labels = []
        vectors = []
        cocycles_ok = True
        basis = s_only_alg.basis_in_degree(degree)
        for i in range(k + 1):
            p = i * period // sy_deg
            q = (k - i) * period // sz_deg
            witness = (
                sx
                * quotient.algebra.gen(suspended_name(y)) ** p
                * quotient.algebra.gen(suspended_name(z)) ** q
            )
            if quotient.d(witness).is_zero() and not witness.is_zero():
                pairs.append((p, q))
            else:
                cocycles_ok = False
                pairs.append((p, q))
            labels.append(str(witness))
            vectors.append(element_coordinates(project(witness), basis))
        independent = linalg.rank(vectors) == len(vectors)
        entries.append(
            WitnessEntry(k, degree, tuple(pairs), tuple(labels), cocycles_ok, independent)
        )
    return WitnessReport(tuple(even_list), y, z, period, tuple(entries))


def vps_witnesses_for_model(model: CDGA, k_max: int) -> WitnessReport:
    """Witness report for a base model: build the loop model and split generators."""
    odd = [g.name for g in model.algebra.generators if g.degree % 2]
    if len(odd) < 2:
        raise NotApplicable(
            f"witness construction needs at least two odd generators, found {len(odd)}"
        )
    even = [g.name for g in model.algebra.generators if g.degree % 2 == 0]
    return vps_witnesses(loop_model(model), even, odd[0], odd[1], k_max)


def first_odd_witnesses(model: CDGA, p_max: int) -> list[tuple[int, int, Element]]:
    """Cocycles sx_1...sx_m (sy)^p in the full loop model, for p <= p_max.

    x_1..x_m are the generators preceding the first odd generator y in
    canonical order.  Each returned element is a loop-model cocycle.
    """
    odd = [g for g in model.algebra.generators if g.degree % 2]
    if not odd:
        raise NotApplicable("no odd generator")
    y = odd[0]
    loop = loop_model(model)
    prefix = loop.algebra.one()
    prefix_degree = 0
    for g in model.algebra.generators:
        if g.name == y.name:
            break
        prefix = prefix * loop.algebra.gen(suspended_name(g.name))
        prefix_degree += g.degree - 1
    sy = loop.algebra.gen(suspended_name(y.name))
    out = []
    for p in range(p_max + 1):
        witness = prefix * sy**p
        out.append((p, prefix_degree + p * (y.degree - 1), witness))
    return out
