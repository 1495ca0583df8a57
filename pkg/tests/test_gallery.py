from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import px_coeffs, rational_fixed_point, to_residue
from padic_limits.contraction import fixed_point_affine
from padic_limits.errors import AlphabetMismatch
from padic_limits.family import SymbolWord
from padic_limits.gallery import (
    XiMatrix,
    case_family,
    case_image,
    closed_form_fp,
    flip_word,
    lambda_member,
    make_px_system,
    parity_family,
)
from padic_limits.limitset import enumerate_lambda0, lambda0_point
from padic_limits.padic import PadicInt, from_digits, from_rational


def w(*s):
    return SymbolWord(tuple(s), (), 2)


def test_make_px_system():
    S3 = make_px_system(3, 4)
    assert S3.f2.a.value == 3 and S3.f2.b == PadicInt.from_int(3, 4, -2)
    S2 = make_px_system(2, 4)
    assert S2.f2.a.value == 2 and S2.f2.b == PadicInt.from_int(2, 4, -1)
    for p in (2, 3, 5, 7):
        S = make_px_system(p, 6)
        assert fixed_point_affine(S.f1).is_zero()
        assert fixed_point_affine(S.f2) == PadicInt.one(p, 6)


def test_closed_form_examples():
    assert closed_form_fp(make_px_system(3, 4), w(1, 2), 2).digits == (0, 1, 2, 0)
    assert closed_form_fp(make_px_system(2, 4), w(2, 1), 2).digits == (1, 1, 0, 1)
    assert closed_form_fp(make_px_system(5, 4), w(1, 1, 1), 3).is_zero()
    assert closed_form_fp(make_px_system(3, 6), w(2, 1), 2) == from_rational(3, 6, 1, 4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_closed_form_equals_composition_for_all_short_words(p):
    K = 12
    S = make_px_system(p, K)
    for length in range(1, 7):
        for word in product((1, 2), repeat=length):
            cf = closed_form_fp(S, w(*word), length)
            assert cf == fixed_point_affine(S.compose_word(word))
            assert cf.value == to_residue(rational_fixed_point(px_coeffs(p), word), p, K)


def test_lambda_member_examples():
    assert lambda_member(from_digits(3, [0, 1, 2, 0]))
    assert not lambda_member(from_digits(3, [2, 0, 0, 0]))
    assert lambda_member(PadicInt.zero(3, 4))


@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 10), st.data())
def test_lambda_member_symmetric(p, K, data):
    x = PadicInt(p, K, data.draw(st.integers(0, p**K - 1)))
    assert lambda_member(x) == lambda_member(1 - x)


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(1, 2), min_size=1, max_size=6))
def test_plain_points_are_members(p, word):
    S = make_px_system(p, 10)
    assert lambda_member(closed_form_fp(S, w(*word), len(word)))


def test_parity_family_examples():
    fam1 = parity_family(XiMatrix(((2, 2), (2, 2))))
    assert all(xi.images == (1, 2) for xi in fam1.entries())
    fam2 = parity_family(XiMatrix(((2, 1), (2, 1))))
    assert [[xi.images for xi in row] for row in fam2.rows] == [[(1, 2), (2, 1)]] * 2
    assert XiMatrix(((2, 1), (1, 1))).case == 4
    assert parity_family(XiMatrix(((2, 1), (1, 1)))).describe() == case_family(4).describe()


def test_case_image_examples():
    one, zero = PadicInt.one(3, 4), PadicInt.zero(3, 4)
    assert case_image(1, one).value == 2
    assert case_image(2, one).is_zero()
    assert case_image(3, zero) == one


@given(st.integers(1, 3), st.lists(st.integers(1, 2), min_size=1, max_size=6))
def test_case_point_is_case_image_of_plain_point(case, word):
    # pointwise for cases 1-3; case 4 only agrees as a set (see the reduction below)
    S = make_px_system(3, 10)
    x = closed_form_fp(S, w(*word), len(word))
    assert lambda0_point(S, case_family(case), w(*word), len(word)) == case_image(case, x)


@given(st.lists(st.integers(1, 2), min_size=1, max_size=6))
def test_case4_reduction(word):
    S = make_px_system(3, 10)
    n = len(word)
    assert lambda0_point(S, case_family(4), w(*word), n) == 1 - closed_form_fp(S, w(*word), n)


def test_flip():
    assert flip_word(w(1, 2, 1)) == w(2, 1, 2)
    assert flip_word(flip_word(w(1, 2, 2, 1))) == w(1, 2, 2, 1)
    with pytest.raises(AlphabetMismatch):
        flip_word(SymbolWord((1, 3), (), 3))


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(1, 2), min_size=1, max_size=6))
def test_flip_complements_fixed_point(p, word):
    S = make_px_system(p, 10)
    n = len(word)
    assert closed_form_fp(S, flip_word(w(*word)), n) == 1 - closed_form_fp(S, w(*word), n)


@pytest.mark.parametrize("case", [1, 2, 3, 4])
def test_image_identity_small_depth(case):
    # brute-force the case image over every plain word and compare residues
    p, K, d = 3, 10, 4
    S = make_px_system(p, K)
    plain = {
        to_residue(rational_fixed_point(px_coeffs(p), word), p, K)
        for word in product((1, 2), repeat=d)
    }
    formulas = {
        1: lambda x: 2 * x * x,
        2: lambda x: 2 * x * (1 - x),
        3: lambda x: x * x + (1 - x) ** 2,
        4: lambda x: x,
    }
    oracle = {formulas[case](x) % p**d for x in plain}
    assert enumerate_lambda0(S, case_family(case), d).residues() == oracle


def test_parity_matrix_rejects_other_entries():
    with pytest.raises(ValueError):
        XiMatrix(((3, 1), (1, 1)))
