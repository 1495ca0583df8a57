import pytest
from hypothesis import given
from hypothesis import strategies as st

from padic_limits.contraction import AffineMap, ContractionSystem
from padic_limits.errors import AlphabetMismatch, CoverageError, WordTooShort
from padic_limits.family import (
    IndexFamily,
    IndexMap,
    SymbolWord,
    apply_F,
    component_map,
    concat_words,
    parse_family,
    plain_family,
    star_family,
    transform_word,
    validate_coverage,
)
from padic_limits.gallery import case_family, make_px_system
from padic_limits.padic import PadicInt

S3 = make_px_system(3, 8)


def w(*s, tail=()):
    return SymbolWord(tuple(s), tuple(tail), 2)


def n(v, p=3, k=8):
    return PadicInt.from_int(p, k, v)


# words

def test_word_parse_and_unfold():
    a = SymbolWord.parse("1,2:1")
    assert a.symbols(5) == (1, 2, 1, 1, 1)
    assert str(a) == "1,2:1"
    with pytest.raises(WordTooShort):
        SymbolWord.parse("1,2").symbols(3)


def test_word_shift():
    assert SymbolWord.parse("1,2,1").shift(1).prefix == (2, 1)
    assert SymbolWord.parse("1:2,1").shift(2).symbols(4) == (1, 2, 1, 2)


# coverage and star action

def test_coverage_examples():
    ident = IndexMap.identity(2)
    const = IndexMap((1, 1))
    assert validate_coverage([[ident, ident], [ident, ident]], 2)
    assert not validate_coverage([[const, const], [const, const]], 2)
    with pytest.raises(CoverageError):
        IndexFamily(((const, const), (const, const)))


def test_star_examples():
    assert IndexMap.star(2, 3).images == (3, 1, 2)
    assert IndexMap.star(2, 2).images == (1, 2)
    for N in range(1, 7):
        assert IndexMap.star(N, N).images == tuple(range(1, N + 1))


@given(st.integers(1, 6), st.integers(1, 3), st.integers(1, 3), st.data())
def test_star_family_covers(N, M, L, data):
    vals = [[data.draw(st.integers(1, N)) for _ in range(L)] for _ in range(M)]
    fam = star_family(vals, N)
    assert validate_coverage(fam, N)


def test_parity_action():
    a = w(1, 2, 1)
    assert transform_word(IndexMap.identity(2), a) == a
    assert transform_word(IndexMap.parity(1), a).prefix == (2, 1, 2)
    assert transform_word(IndexMap.parity(2), a) == a


def test_parity_and_star_differ_for_two_symbols():
    # same lookup rows on two symbols, but built by different rules
    assert IndexMap.star(1, 2).images == IndexMap.parity(1).images
    assert IndexMap.star(1, 2).label != IndexMap.parity(1).label


def test_parse_family():
    fam = parse_family("parity:2 parity:1\nparity:2 parity:1", 2)
    assert fam.M == 2 and fam.L == 2
    assert fam.describe() == "parity:2 parity:1\nparity:2 parity:1"
    with pytest.raises(AlphabetMismatch):
        parse_family("perm:(1,2)", 3)


# component maps and F

def test_component_map_examples():
    g = component_map(S3, IndexMap.identity(2), w(1, 2), 2)
    assert g.a == n(9) and g.b == n(-6)
    assert component_map(S3, IndexMap.identity(2), w(2), 1) == S3.f2
    h = component_map(S3, IndexMap.parity(1), w(1, 1), 2)
    assert h.a == n(9) and h.b == n(-8)


def test_apply_F_examples():
    assert apply_F(S3, case_family(1), w(2), 1, n(1)) == n(2)
    assert apply_F(S3, case_family(2), w(2), 1, n(1)) == n(6)


def _direct_F(system, family, alpha, k, x):
    # term-by-term evaluation with explicit symbol routing
    total = 0
    for row in family.rows:
        prod = 1
        for xi in row:
            y = x
            for s in reversed(alpha.symbols(k)):
                f = system.maps[xi(s) - 1]
                y = f.a * y + f.b
            prod = prod * y
        total = total + prod
    return total


words = st.lists(st.integers(1, 2), min_size=1, max_size=6).map(lambda s: w(*s))


@given(st.integers(1, 4), words, st.integers(0, 3**8 - 1))
def test_apply_F_matches_direct_evaluation(case, alpha, v):
    x = n(v)
    k = len(alpha.prefix)
    assert apply_F(S3, case_family(case), alpha, k, x) == _direct_F(S3, case_family(case), alpha, k, x)


@given(st.integers(1, 4), words, st.integers(0, 3**8 - 1), st.integers(0, 3**8 - 1))
def test_F_lipschitz(case, alpha, u, v):
    x, y = n(u), n(v)
    k = len(alpha.prefix)
    F = lambda z: apply_F(S3, case_family(case), alpha, k, z)
    assert (F(x) - F(y)).valuation() >= min((x - y).valuation() + k, 8)
    assert F(x).valuation() >= 0


@given(st.integers(1, 4), words)
def test_component_multiplier_valuation(case, alpha):
    k = len(alpha.prefix)
    for xi in case_family(case).entries():
        assert component_map(S3, xi, alpha, k).a.valuation() >= min(k, 8)


def test_component_map_other_system():
    p, K = 5, 6
    maps = tuple(AffineMap.from_rationals(p, K, p, b) for b in (0, 1, 2))
    S = ContractionSystem(maps)
    fam = star_family([[1, 2]], 3)
    alpha = SymbolWord((1, 3), (), 3)
    g = component_map(S, fam.entry(1, 1), alpha, 2)
    # star:1 sends 1 -> 2 and 3 -> 1, so this is f2 o f1: 5*(5x) + 1
    assert g.a.value == 25 and g.b.value == 1


# concatenation

def test_concat_examples():
    c = concat_words(w(2), 1, w(tail=(1,)))
    assert c.symbols(4) == (2, 1, 1, 1)
    assert concat_words(w(1, 2, 1), 2, w(2)) == w(1, 2, 2)


@given(words, st.data())
def test_concat_split_identity(alpha, data):
    k = data.draw(st.integers(1, len(alpha.prefix)))
    if k == len(alpha.prefix):
        return
    assert concat_words(alpha, k, alpha.shift(k)) == alpha


def test_plain_family():
    fam = plain_family(3)
    assert (fam.M, fam.L, fam.N) == (1, 1, 3)
