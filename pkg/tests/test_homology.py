from fractions import Fraction

import pytest

from sullivan import linalg
from sullivan.algebra import FreeGradedAlgebra, Generator
from sullivan.calculus import (
    CDGA,
    Derivation,
    Morphism,
    koszul_model,
    loop_model,
    make_cdga,
    quotient_by_generators,
)
from sullivan.errors import BasisSizeExceeded, NotACocycle
from sullivan.homology import (
    assemble_window,
    betti,
    class_is_nontrivial,
    element_coordinates,
    h_algebra_generator_counts,
    quasi_iso_check,
    quasi_iso_via_indecomposables,
)
from sullivan.models import Recipe, build

from helpers import builtin_models, cpn_model, even_sphere_model, s3_model, s3s3_model


# -- window assembly ----------------------------------------------------------------


def test_window_basis_sizes():
    # oracle: hand enumeration for Lambda(v2, w3), degrees 0..6
    window = assemble_window(even_sphere_model(1), 6)
    assert [len(b) for b in window.bases[:7]] == [1, 0, 1, 1, 1, 1, 1]


def test_zero_differential_gives_zero_matrices():
    window = assemble_window(s3s3_model(), 8)
    for n in range(9):
        assert all(not any(row) for row in window.matrix(n))


def test_even_sphere_matrix_entry():
    model = even_sphere_model(1)
    window = assemble_window(model, 4)
    # degree 3 basis is [w], degree 4 basis is [v^2]; d sends w to v^2
    assert [model.algebra.word_str(w) for w in window.bases[3]] == ["w"]
    assert [model.algebra.word_str(w) for w in window.bases[4]] == ["v^2"]
    assert window.matrix(3) == [[Fraction(1)]]


def test_consecutive_matrices_compose_to_zero():
    for name, model in builtin_models():
        window = assemble_window(loop_model(model), 8)
        for n in range(7):
            a = window.matrix(n)
            b = window.matrix(n + 1)
            for i in range(len(b)):
                for j in range(len(a[0]) if a else 0):
                    acc = sum((b[i][k] * a[k][j] for k in range(len(a))), Fraction(0))
                    assert acc == 0, name


def test_basis_cap_is_enforced():
    with pytest.raises(BasisSizeExceeded):
        assemble_window(loop_model(s3s3_model()), 12, cap=3)


# -- betti ----------------------------------------------------------------------------


def test_even_sphere_betti():
    # H = k[v]/v^2: classes in degrees 0 and 2 only, [v^2] = [dw] dies
    report = betti(even_sphere_model(1), 8)
    assert list(report.betti) == [1, 0, 1, 0, 0, 0, 0, 0, 0]
    assert report.window_valid_to == 8


def test_loop_betti_of_s3():
    # oracle: monomial count of Lambda(v3, sv2) per degree
    report = betti(loop_model(s3_model()), 20)
    expected = [1 if n != 1 else 0 for n in range(21)]
    assert list(report.betti) == expected


def test_loop_betti_of_s3s3():
    report = betti(loop_model(s3s3_model()), 12)
    assert list(report.betti) == [1, 0, 2, 2] + [n - 1 for n in range(4, 13)]


def test_representatives_are_cocycles_and_independent_mod_boundaries():
    model = loop_model(cpn_model(2))
    window = assemble_window(model, 12)
    report = betti(model, 12)
    for n, classes in enumerate(report.representatives):
        assert len(classes) == report.betti[n]
        boundaries = window.boundary_vectors(n)
        base_rank = linalg.rank(boundaries)
        stack = list(boundaries)
        for rep in classes:
            assert model.d(rep).is_zero()
            assert rep.degree() == n
            stack.append(element_coordinates(rep, window.bases[n]))
        assert linalg.rank(stack) == base_rank + len(classes)


def test_betti_ignores_generator_insertion_order():
    gens = [Generator("v", 2), Generator("w", 5)]
    a = FreeGradedAlgebra(gens)
    forward = CDGA(a, Derivation(a, 1, {"v": a.zero(), "w": a.gen("v") ** 3}))
    b = FreeGradedAlgebra(list(reversed(gens)))
    backward = CDGA(b, Derivation(b, 1, {"v": b.zero(), "w": b.gen("v") ** 3}))
    ra, rb = betti(forward, 10), betti(backward, 10)
    assert ra.betti == rb.betti
    assert [[str(c) for c in classes] for classes in ra.representatives] == [
        [str(c) for c in classes] for classes in rb.representatives
    ]


def test_dimension_count_two_ways():
    # dim C^n = b_n + rank d^n + rank d^(n-1) for every window degree
    for name, model in [("cp2 loop", loop_model(cpn_model(2))), ("s3s3 loop", loop_model(s3s3_model()))]:
        window = assemble_window(model, 10)
        report = betti(model, 10)
        for n in range(11):
            r_here = linalg.rank(window.matrix(n))
            r_prev = linalg.rank(window.matrix(n - 1)) if n else 0
            assert window.dim(n) == report.betti[n] + r_here + r_prev, (name, n)


# -- nontriviality ------------------------------------------------------------------------


def test_unit_class_is_nontrivial():
    model = even_sphere_model(1)
    assert class_is_nontrivial(model, model.algebra.one())


def test_boundaries_are_trivial():
    model = even_sphere_model(1)
    v, w = model.algebra.gen("v"), model.algebra.gen("w")
    assert not class_is_nontrivial(model, model.d(w * v))
    assert not class_is_nontrivial(model, model.algebra.zero())


def test_non_cocycle_rejected():
    model = even_sphere_model(1)
    with pytest.raises(NotACocycle):
        class_is_nontrivial(model, model.algebra.gen("w"))


def test_sullivan_family_classes_are_nontrivial():
    # sx1...sxm (sy)^p in the loop model of the even sphere: m = 1, y = w
    model = even_sphere_model(1)
    loop = loop_model(model)
    sv, sw = loop.algebra.gen("sv"), loop.algebra.gen("sw")
    for p in range(4):
        witness = sv * sw**p
        assert loop.d(witness).is_zero()
        assert class_is_nontrivial(loop, witness)


# -- quasi-isomorphism checks ------------------------------------------------------------


def test_identity_is_quasi_iso():
    model = even_sphere_model(1)
    report = quasi_iso_check(model, model, Morphism.identity(model.algebra), 8)
    assert report.is_quasi_iso


def test_truncated_poly_model_maps_quasi_iso_to_koszul_encoding():
    # target encodes k[x]/x^(n+1) via the Koszul model; H(m) hits 1, x, ..., x^n
    n = 2
    source = cpn_model(n)
    presentation = make_cdga([Generator("x", 2)])
    koszul = koszul_model(presentation, presentation.algebra.gen("x") ** (n + 1), 14)
    target = koszul.model
    m = Morphism(
        source.algebra,
        target.algebra,
        {"v": target.algebra.gen("x"), "w": target.algebra.gen("sz")},
    )
    report = quasi_iso_check(source, target, m, 12)
    assert report.is_quasi_iso


def test_inclusion_into_multiplication_relative_model_is_not_quasi_iso():
    big_alg = FreeGradedAlgebra(
        [Generator("v1", 3), Generator("v2", 3), Generator("sv", 2)]
    )
    big = CDGA(
        big_alg,
        Derivation(big_alg, 1, {"v1": big_alg.zero(), "v2": big_alg.zero(),
                                "sv": big_alg.gen("v2") - big_alg.gen("v1")}),
    )
    small = make_cdga([Generator("v1", 3), Generator("v2", 3)])
    inclusion = Morphism.inclusion(small.algebra, big_alg)
    report = quasi_iso_check(small, big, inclusion, 8)
    assert not report.is_quasi_iso
    failures = [v.degree for v in report.per_degree if not v.isomorphism]
    assert 3 in failures  # [v1] and [v2] collapse in the target


def test_quasi_iso_via_indecomposables_on_relative_model():
    big_alg = FreeGradedAlgebra(
        [Generator("v1", 3), Generator("v2", 3), Generator("sv", 2)]
    )
    big = CDGA(
        big_alg,
        Derivation(big_alg, 1, {"v1": big_alg.zero(), "v2": big_alg.zero(),
                                "sv": big_alg.gen("v2") - big_alg.gen("v1")}),
    )
    target = make_cdga([Generator("v", 3)])
    m = Morphism(
        big_alg,
        target.algebra,
        {"v1": target.algebra.gen("v"), "v2": target.algebra.gen("v"),
         "sv": target.algebra.zero()},
    )
    assert quasi_iso_via_indecomposables(big, target, m).is_quasi_iso


def test_killing_a_generator_is_detected_on_indecomposables():
    source = make_cdga([Generator("v", 3), Generator("w", 5)])
    target = make_cdga([Generator("v", 3)])
    m = Morphism(source.algebra, target.algebra,
                 {"v": target.algebra.gen("v"), "w": target.algebra.zero()})
    report = quasi_iso_via_indecomposables(source, target, m)
    assert not report.is_quasi_iso


def test_quasi_iso_requires_chain_map():
    source = even_sphere_model(1)
    target = make_cdga([Generator("v", 2), Generator("w", 3)])
    m = Morphism(source.algebra, target.algebra,
                 {"v": target.algebra.gen("v"), "w": target.algebra.gen("w")})
    with pytest.raises(ValueError):
        quasi_iso_check(source, target, m, 6)


# -- the long-exact-sequence bound --------------------------------------------------------


def test_elimination_bound_on_koszul_pairs():
    # dim H^n(A/zA) <= dim H^n(A) + dim H^(n+1-|z|)(A)
    presentation = make_cdga([Generator("x", 2)])
    for n_rel in (1, 2, 3):
        z = presentation.algebra.gen("x") ** (n_rel + 1)
        koszul = koszul_model(presentation, z, 12)
        h_a = [len(presentation.algebra.basis_in_degree(n)) for n in range(14)]
        z_degree = 2 * (n_rel + 1)
        for n in range(13):
            upper = n + 1 - z_degree
            bound = h_a[n] + (h_a[upper] if 0 <= upper < len(h_a) else 0)
            assert koszul.quotient_dims[n] <= bound


def test_elimination_bound_on_quotient_pairs():
    # quotient of a loop model by an even base generator, degreewise bound
    model = build(Recipe("product", (Recipe("even_sphere", (1,)), Recipe("odd_sphere", (1,)))))
    loop = loop_model(model)
    x = "v_1"  # the even generator of the sphere factor
    degree_x = loop.algebra.generator(x).degree
    quotient = quotient_by_generators(loop, [x])
    full = betti(loop, 12).betti
    quo = betti(quotient, 10).betti
    for n in range(11):
        upper = n + 1 - degree_x
        bound = full[n] + (full[upper] if 0 <= upper <= 12 else 0)
        assert quo[n] <= bound


# -- H* generator heuristic ---------------------------------------------------------------


def test_h_generator_counts_even_sphere():
    counts = h_algebra_generator_counts(even_sphere_model(1), 8)
    assert list(counts) == [0, 0, 1, 0, 0, 0, 0, 0, 0]


def test_h_generator_counts_product():
    counts = h_algebra_generator_counts(s3s3_model(), 8)
    assert list(counts) == [0, 0, 0, 2, 0, 0, 0, 0, 0]
