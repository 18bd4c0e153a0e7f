"""Lattice and form basics: gram matrices, parity, the crystallographic
condition, norm bounds, and the sign convention."""

import random

import pytest

from bianchi.errors import InvalidFieldParameter
from bianchi.qform import (
    allowed_norms,
    bilinear,
    crystallographic_ok,
    make_form,
    norm,
    normalize_primitive,
)
from bianchi.reference_data import M33_VECTORS

from _oracles import f_poly, pairing


def test_branch_a_gram():
    form = make_form(2)
    assert form.branch == "A"
    assert form.gram == ((0, -1, 0, 0), (-1, 0, 0, 0), (0, 0, 2, 0), (0, 0, 0, 4))


def test_branch_b_gram():
    form = make_form(7)
    assert form.branch == "B"
    assert form.gram == ((0, -1, 0, 0), (-1, 0, 0, 0), (0, 0, 2, 1), (0, 0, 1, 4))


def test_branch_by_congruence():
    assert make_form(33).branch == "A"
    assert make_form(33).gram[3][3] == 66
    assert make_form(35).branch == "B"


@pytest.mark.parametrize("bad", [0, -5, 4, 12, 50, 2.0, "7"])
def test_make_form_rejects(bad):
    with pytest.raises((InvalidFieldParameter, TypeError)):
        make_form(bad)


def test_bilinear_examples():
    form = make_form(5)
    assert bilinear(form, (0, 0, -1, 0), (1, 0, 1, 0)) == -2
    assert bilinear(form, (1, 0, 0, 0), (1, 0, 0, 0)) == 0
    assert bilinear(form, (1, 0, 0, 0), (-1, 1, 0, 0)) == -1


def test_norm_examples():
    form = make_form(33)
    assert norm(form, (11, 3, 1, 1)) == 2
    assert norm(form, (264, 66, 0, 23)) == 66
    assert norm(form, (1, 0, 0, 0)) == 0


def test_norm_matches_polynomial_and_is_even():
    rng = random.Random(271828)
    for m in (1, 2, 5, 7, 11, 15, 33, 34, 35, 43):
        form = make_form(m)
        for _ in range(100):
            v = tuple(rng.randint(-10**6, 10**6) for _ in range(4))
            n = norm(form, v)
            assert n == f_poly(m, v)
            assert n % 2 == 0


def test_bilinear_symmetric_and_linear():
    rng = random.Random(314159)
    for m in (6, 19, 42):
        form = make_form(m)
        for _ in range(50):
            u, v, w = (tuple(rng.randint(-999, 999) for _ in range(4)) for _ in range(3))
            a, b = rng.randint(-9, 9), rng.randint(-9, 9)
            assert bilinear(form, u, v) == bilinear(form, v, u)
            au_bw = tuple(a * x + b * y for x, y in zip(u, w))
            assert bilinear(form, au_bw, v) == a * bilinear(form, u, v) + b * bilinear(form, w, v)
            assert bilinear(form, u, v) == pairing(m, u, v)


def test_normalize_primitive():
    assert normalize_primitive((2, 0, 2, 0)) == (1, 0, 1, 0)
    assert normalize_primitive((0, 0, 1, 0)) == (0, 0, 1, 0)
    assert normalize_primitive((0, 0, -2, 0)) == (0, 0, 1, 0)
    assert normalize_primitive((-3, 3, 0, 0)) == (-1, 1, 0, 0)
    assert normalize_primitive((3, -3, 0, 0)) == (-1, 1, 0, 0)
    with pytest.raises(ValueError):
        normalize_primitive((0, 0, 0, 0))


def test_crystallographic_examples():
    assert crystallographic_ok(make_form(5), (-1, 1, 0, 0))
    assert crystallographic_ok(make_form(33), (16, 2, 1, 1))
    assert not crystallographic_ok(make_form(2), (-1, 1, 1, 0))


def test_crystallographic_needs_positive_norm():
    with pytest.raises(ValueError):
        crystallographic_ok(make_form(5), (1, 0, 0, 0))


def test_allowed_norms():
    assert allowed_norms(make_form(7)) == (2, 14)
    assert allowed_norms(make_form(33)) == (2, 4, 6, 12, 22, 44, 66, 132)
    assert allowed_norms(make_form(1)) == (2, 4)


def test_published_m33_roots_are_admissible():
    form = make_form(33)
    norms = allowed_norms(form)
    for vec in M33_VECTORS:
        assert crystallographic_ok(form, vec)
        assert norm(form, vec) in norms
