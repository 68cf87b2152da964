"""Standalone property suite: zero rule, truncation consistency, elimination agreement."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankelcf.algebra import Poly, RationalFunction, series_expand
from hankelcf.cfrac import build_chain
from hankelcf.genfunc import GFKind, series_from_fe
from hankelcf.oracle import DEFAULT_PRIME, det_bareiss, det_mod_p, hankel_det, to_residue

KINDS = [GFKind(f, r) for f in "FG" for r in range(1, 10)]


@pytest.mark.parametrize("kind", KINDS, ids=str)
def test_zero_rule(kind):
    chain = build_chain(kind.fe(), 40)
    seen = 0
    for fe in chain.fes():
        s = list(series_from_fe(fe, 2 * fe.d + 2).coeffs)
        assert s[: fe.d] == [0] * fe.d and s[fe.d] != 0
        for m in range(1, fe.d + 1):
            assert hankel_det(s, m) == 0
        seen += fe.d > 0
    # only odd-r F has vanishing determinants, hence steps with d > 0
    assert (seen > 0) == (kind.family == "F" and kind.r % 2 == 1 and kind.r >= 3)


polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(Poly)


@given(polys, polys.filter(lambda p: p[0] != 0), st.integers(0, 25))
def test_truncation_consistency(a, b, N):
    f = RationalFunction(a, b)
    assert series_expand(f, N + 3).coeffs[: N + 1] == series_expand(f, N).coeffs


@pytest.mark.parametrize("kind", KINDS, ids=str)
def test_fe_series_truncation(kind):
    fe = build_chain(kind.fe(), 6).last
    assert series_from_fe(fe, 30).coeffs[:21] == series_from_fe(fe, 20).coeffs


square = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(-10**6, 10**6), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=200)
@given(square)
def test_bareiss_modp_agreement(M):
    assert to_residue(det_bareiss(M)) == det_mod_p(M, DEFAULT_PRIME)


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(-5, 5), min_size=n, max_size=n), st.integers(0, n - 1))))
def test_bareiss_singular(data):
    n, row, i = data
    # duplicating a row forces a zero determinant
    M = [[(a * 7 + b * 3 + k) % 11 - 5 for b in range(n)] for a, k in zip(range(n), row)]
    M[(i + 1) % n] = list(M[i])
    assert det_bareiss(M) == 0
    assert det_mod_p(M, DEFAULT_PRIME) == 0
