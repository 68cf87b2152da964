import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankelcf.algebra import Poly, PowerSeries, Q, RationalFunction, binom
from hankelcf.cfrac import QuadraticFE
from hankelcf.errors import DivergentIteration, NoRelationFound
from hankelcf.genfunc import (
    GFKind,
    build_fe_F,
    build_fe_G,
    catalan_coeff,
    conv_coeff,
    derive_fe,
    g_coeff,
    odd_coefficient,
    series_from_fe,
    series_of,
)


def P(*c):
    return RationalFunction(Poly(list(c)))


def test_catalan():
    assert [catalan_coeff(n) for n in (0, 3, 5)] == [1, 5, 42]


def test_conv_coeff():
    assert conv_coeff(0, 9) == 1
    assert conv_coeff(1, 3) == 3
    assert conv_coeff(2, 7) == 35


def test_conv_coeff_is_series_power():
    C = series_of(GFKind("F", 1), 12)
    acc = PowerSeries([1], 12)
    for r in range(1, 6):
        acc = acc * C
        assert list(acc.coeffs) == [conv_coeff(n, r) for n in range(13)]


def test_g_coeff():
    assert g_coeff(0, 4) == 1
    assert g_coeff(1, 1) == 3
    assert g_coeff(2, 3) == 21


def test_build_fe_F_examples():
    fe = build_fe_F(3)
    assert (fe.d, fe.k, fe.u, fe.v) == (0, 3, P(1, -3), P(-1))
    fe = build_fe_F(5)
    assert (fe.d, fe.k, fe.u, fe.v) == (0, 5, P(1, -5, 5), P(-1))
    fe = build_fe_F(4)
    assert (fe.d, fe.k, fe.u, fe.v) == (0, 4, P(1, -4, 2), P(-1))


def test_build_fe_F_one_is_catalan():
    fe = build_fe_F(1)
    assert (fe.d, fe.k, fe.u, fe.v) == (0, 1, P(1), P(-1))


def test_build_fe_G_examples():
    one_minus_4x = Poly([1, -4])
    fe = build_fe_G(3)
    assert (fe.d, fe.k) == (0, 3)
    assert fe.u == RationalFunction(one_minus_4x * Poly([1, -1]))
    assert fe.v == RationalFunction(one_minus_4x)
    fe = build_fe_G(2)
    assert fe.u == RationalFunction(one_minus_4x) and fe.k == 2
    fe = build_fe_G(6)
    assert fe.u == RationalFunction(one_minus_4x * Poly([1, -4, 3]))


def test_series_from_fe_examples():
    assert list(series_from_fe(build_fe_F(3), 3).coeffs) == [1, 3, 9, 28]
    # binom(2n+2, n)
    assert list(series_from_fe(build_fe_G(2), 3).coeffs) == [1, 4, 15, 56]
    assert list(series_from_fe(build_fe_F(1), 4).coeffs) == [1, 1, 2, 5, 14]


@pytest.mark.parametrize("r", range(1, 14))
def test_fe_solutions_match_closed_forms(r):
    N = 200 if r <= 3 else 80
    sF = series_from_fe(build_fe_F(r), N)
    assert list(sF.coeffs) == [conv_coeff(n, r) for n in range(N + 1)]
    sG = series_from_fe(build_fe_G(r), N)
    assert list(sG.coeffs) == [g_coeff(n, r) for n in range(N + 1)]


def test_series_from_fe_rejects_noncanonical():
    fe = QuadraticFE(0, 1, P(1), P(1))
    object.__setattr__(fe, "k", 0)
    with pytest.raises(DivergentIteration):
        series_from_fe(fe, 3)


def test_derive_fe_examples():
    C = series_of(GFKind("F", 1), 12)
    assert derive_fe(C, 1, 0, 0) == (Poly([0, 1]), Poly([-1]), Poly([1]))
    F3 = series_of(GFKind("F", 3), 14)
    assert derive_fe(F3, 3, 2, 0) == (Poly([0, 0, 0, 1]), Poly([-1, 3]), Poly([1]))
    with pytest.raises(NoRelationFound):
        derive_fe(C, 0, 0, 0)


@pytest.mark.parametrize("r", range(2, 14))
def test_derive_fe_recovers_closed_form(r):
    t = r // 2
    S = series_of(GFKind("F", r), 2 * (r + t) + 10)
    a, b, c = derive_fe(S, r, t, 0)
    fa, fb, fc = build_fe_F(r).relation()
    # proportional relations: cross products vanish
    assert a * fb == b * fa and a * fc == c * fa


@given(st.integers(0, 200).flatmap(lambda t: st.tuples(st.just(t), st.integers(0, t))))
def test_odd_coefficients_are_integers(ti):
    t, i = ti
    assert odd_coefficient(t, i) == binom(2 * t - i, i) + 2 * binom(2 * t - i, i - 1)


@given(st.integers(0, 40), st.integers(0, 12))
def test_coefficients_integral(n, r):
    if r:
        assert conv_coeff(n, r).denominator == 1
    assert g_coeff(n, r).denominator == 1


def test_gfkind_validation():
    with pytest.raises(ValueError):
        GFKind("H", 3)
    with pytest.raises(ValueError):
        GFKind("F", 0)
    assert str(GFKind("G", 0)) == "G(x,0)"
    assert GFKind("G", 0).coeffs(3) == [1, 2, 6]
    assert Q(GFKind("F", 2).coeff(3)) == 14
