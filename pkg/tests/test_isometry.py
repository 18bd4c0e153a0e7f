"""Isometry classification (exact, via cyclotomic factors), the published
loxodromic witness, parabolic fixed points, the symmetry search, and
certificates."""

import random
from fractions import Fraction

import pytest

from bianchi.isometry import (
    ELLIPTIC,
    IDENTITY,
    LOXODROMIC,
    PARABOLIC,
    ClassFilterCertificate,
    LoxodromicCertificate,
    ParabolicRank2Certificate,
    certify,
    charpoly,
    classify,
    find_diagram_symmetry,
    parabolic_fixed_point,
    preserves_form,
    reflection_matrix,
    translation_data,
)
from bianchi.coxeter import build_diagram
from bianchi.linalg import identity, inverse_unimodular, mat_mul
from bianchi.qform import make_form, make_root
from bianchi.reference_data import M35_LOXODROMIC
from bianchi.vinberg import Budget, initial_roots, run


def _random_conjugator(form, rng, reflections):
    g = identity(4)
    for _ in range(rng.randint(1, 4)):
        g = mat_mul(g, rng.choice(reflections))
    return g


def _reflections(form):
    roots = initial_roots(form) + [make_root(form, (-1, 1, 0, 0))]
    return [reflection_matrix(form, r) for r in roots]


def test_published_loxodromic_matrix():
    form = make_form(35)
    assert preserves_form(M35_LOXODROMIC, form)
    assert classify(M35_LOXODROMIC, form) == LOXODROMIC


def test_identity_and_reflections():
    form = make_form(5)
    assert preserves_form(identity(4), form)
    assert classify(identity(4), form) == IDENTITY
    for refl in _reflections(form):
        assert preserves_form(refl, form)
        assert classify(refl, form) == ELLIPTIC
        assert mat_mul(refl, refl) == identity(4)


def test_preserves_form_rejects():
    form = make_form(5)
    not_iso = tuple(tuple(2 if i == j else 0 for j in range(4)) for i in range(4))
    assert not preserves_form(not_iso, form)
    with pytest.raises(ValueError):
        classify(not_iso, form)


def test_parabolic_product_of_cusp_pair_reflections():
    """Reflections in the two parallel walls through the base point compose
    to a parabolic translation fixing it."""
    for m in (5, 7, 34):
        form = make_form(m)
        e1, e2 = initial_roots(form)[:2]
        g = mat_mul(reflection_matrix(form, e1), reflection_matrix(form, e2))
        assert classify(g, form) == PARABOLIC
        assert parabolic_fixed_point(g, form) == (1, 0, 0, 0)
        q, w, trans = translation_data(g, form)
        assert q == (1, 0, 0, 0)


def test_parabolic_fixed_point_rejects_loxodromic():
    with pytest.raises(ValueError):
        parabolic_fixed_point(M35_LOXODROMIC, make_form(35))


def test_charpoly_of_published_matrix():
    # x^4 - 151 x^3 - 15 x^2 - 151 x + 1: visibly not a cyclotomic product
    assert charpoly(M35_LOXODROMIC) == [1, -151, -15, -151, 1]


def test_classify_conjugation_invariance():
    rng = random.Random(99991)
    form = make_form(35)
    refls = _reflections(form)
    e1, e2 = initial_roots(form)[:2]
    parabolic = mat_mul(reflection_matrix(form, e1), reflection_matrix(form, e2))
    samples = [(M35_LOXODROMIC, LOXODROMIC), (parabolic, PARABOLIC), (refls[0], ELLIPTIC)]
    for _ in range(100):
        h = _random_conjugator(form, rng, refls)
        h_inv = inverse_unimodular(h)
        for g, expected in samples:
            assert classify(mat_mul(h_inv, mat_mul(g, h)), form) == expected


def test_classify_powers():
    form = make_form(35)
    e1, e2 = initial_roots(form)[:2]
    parabolic = mat_mul(reflection_matrix(form, e1), reflection_matrix(form, e2))
    g = M35_LOXODROMIC
    p = parabolic
    for _ in range(3):
        g = mat_mul(g, M35_LOXODROMIC)
        p = mat_mul(p, parabolic)
        assert classify(g, form) == LOXODROMIC
        assert classify(p, form) == PARABOLIC
    inv = inverse_unimodular(M35_LOXODROMIC)
    assert classify(inv, form) == LOXODROMIC


def test_symmetry_search_terminated_diagram(terminated_runs):
    """A complete mirror system only admits finite-order symmetries."""
    form, state, _d = terminated_runs[33]
    syms = find_diagram_symmetry(state.roots, form, complete_weight_sq=None,
                                 prods=state.prods)
    assert syms, "the published domain has a visible symmetry"
    for g in syms:
        assert classify(g.mat, form) == ELLIPTIC


def test_symmetry_images_stay_roots(terminated_runs):
    from bianchi.linalg import mat_vec
    from bianchi.qform import crystallographic_ok, norm as qnorm

    form, state, _d = terminated_runs[33]
    mirrors = {r.vec for r in state.roots} | {
        tuple(-x for x in r.vec) for r in state.roots
    }
    for g in find_diagram_symmetry(state.roots, form, None, state.prods):
        for r in state.roots:
            image = mat_vec(g.mat, r.vec)
            assert image in mirrors
            assert qnorm(form, image) == r.norm
            assert crystallographic_ok(form, image)


def test_certify_m35_loxodromic():
    form = make_form(35)
    state = run(form, Budget(max_roots=29, max_weight_sq=Fraction(10**6)))
    assert len(state.roots) == 29
    diagram = build_diagram(form, state.roots)
    cert = certify(state, diagram, 35)
    assert isinstance(cert, LoxodromicCertificate)
    assert preserves_form(cert.mat, form)
    assert classify(cert.mat, form) == LOXODROMIC


@pytest.mark.parametrize("m", [23, 31])
def test_certify_parabolic_rank2(m):
    form = make_form(m)
    state = run(form)
    diagram = build_diagram(form, state.roots)
    cert = certify(state, diagram, m)
    assert isinstance(cert, ParabolicRank2Certificate)
    g1, g2 = cert.mats
    q = cert.fixed_point
    from bianchi.linalg import mat_vec
    from bianchi.qform import bilinear

    for g in (g1, g2):
        assert preserves_form(g, form)
        assert classify(g, form) == PARABOLIC
    assert bilinear(form, q, q) == 0
    for t in cert.translations:
        assert mat_vec(t, q) == q


def test_certify_class_filter():
    form = make_form(47)  # class group Z/5: no reflective shape possible
    state = run(form)
    diagram = build_diagram(form, state.roots)
    cert = certify(state, diagram, 47)
    assert isinstance(cert, ClassFilterCertificate)
    assert cert.invariant_factors == (5,)
