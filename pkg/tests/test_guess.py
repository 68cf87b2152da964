from math import inf

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankelcf.algebra import Poly, Q, RationalFunction
from hankelcf.cfrac import Chain, build_chain, detect_period
from hankelcf.errors import NoFit, VerificationFailed
from hankelcf.genfunc import GFKind
from hankelcf.guess import (
    TABLE_F_EVEN,
    TABLE_F_ODD,
    SignPattern,
    check_degree_tables,
    check_sign_removal,
    class_sequence,
    class_structure,
    conjecture_g_odd_overlaps,
    conjectured_degrees,
    fit_class,
    fit_polynomial,
    fit_rational,
    lagrange,
    period_scale_values,
)


def test_sign_patterns():
    assert [SignPattern()(n) for n in range(3)] == [1, 1, 1]
    assert [SignPattern("tn", 3)(n) for n in range(4)] == [1, -1, 1, -1]
    # binom(3,2) = 3 is odd, binom(4,2) = 6 is even
    assert [SignPattern("binom", 3)(n) for n in range(3)] == [1, -1, 1]
    assert [SignPattern("binom", 4)(n) for n in range(3)] == [1, 1, 1]
    with pytest.raises(ValueError):
        SignPattern("odd")


def test_lagrange():
    assert lagrange([(0, 1), (1, 3), (2, 7)]) == Poly([1, 1, 1])
    with pytest.raises(ValueError):
        lagrange([(1, 1), (1, 2)])


def test_fit_polynomial_reports_miss():
    with pytest.raises(VerificationFailed) as err:
        fit_polynomial([(0, 0), (1, 1), (2, 4), (3, 10)], verify_count=1)
    assert err.value.n == 3


def test_fit_f5_class_2():
    g = fit_class(GFKind("F", 5), 2, max_degree=3)
    assert g.poly == Poly([-5, -5])
    assert g.poly.format("n") == "-5-5n"


def test_fit_f4_class_0():
    g = fit_class(GFKind("F", 4), 0, max_degree=3)
    assert g.sign == SignPattern("binom", 2)
    assert g.poly == Poly([1, 1])


def test_f7_zero_class():
    g = fit_class(GFKind("F", 7), 4, max_degree=2)
    assert g.degree == -inf


def test_sign_removal():
    kind = GFKind("F", 7)
    chain = Chain(kind.fe())
    g = fit_class(kind, 2, max_degree=5, chain=chain)
    vals = class_sequence(kind, 7, 2, 8, chain)
    assert check_sign_removal(g, vals)


def test_class_structure():
    assert class_structure(GFKind("F", 7)) == (7, SignPattern("tn", 3))
    assert class_structure(GFKind("F", 8)) == (4, SignPattern("binom", 4))
    assert class_structure(GFKind("G", 5)) == (5, SignPattern())
    assert class_structure(GFKind("G", 6)) == (6, SignPattern("tn", 3))


@pytest.mark.parametrize("r", sorted(TABLE_F_ODD) + sorted(TABLE_F_EVEN))
def test_formulas_reproduce_tables(r):
    kind = GFKind("F", r)
    table = (TABLE_F_ODD if r % 2 else TABLE_F_EVEN)[r]
    assert tuple(conjectured_degrees(kind)) == table


@pytest.mark.parametrize("r", sorted(TABLE_F_ODD) + sorted(TABLE_F_EVEN))
def test_tables_are_palindromic(r):
    row = (TABLE_F_ODD if r % 2 else TABLE_F_EVEN)[r]
    # classes 1..modulus, where class modulus is class 0 one period later
    rotated = row[1:] + row[:1]
    assert rotated == rotated[::-1]
    if r % 2:
        assert row.index(None) == r // 2 + 1


@pytest.mark.parametrize("r", [3, 4, 5, 6, 7])
def test_degree_tables_small(r):
    rows = check_degree_tables(GFKind("F", r))
    assert all(row.ok for row in rows), [(row.cls, row.expected, row.fitted) for row in rows]


def test_degree_table_detects_wrong_expectation():
    rows = check_degree_tables(GFKind("F", 5), margin=1)
    assert [row.fitted for row in rows] == [0, 0, 1, -inf, 1]


def test_g_odd_conjecture_has_no_conflicts():
    for r in range(1, 14, 2):
        for _, degs in conjecture_g_odd_overlaps(r):
            assert len(degs) == 1


def test_fit_rational_example():
    pts = [(p, Q(p + 1) / p) for p in range(1, 5)]
    rf = fit_rational(pts, 1, 1)
    assert rf == RationalFunction(Poly([1, 1]), Poly([0, 1]))


def test_fit_rational_needs_points():
    with pytest.raises(ValueError):
        fit_rational([(1, 2), (2, Q("3/2")), (3, Q("4/3"))], 1, 1)


def test_fit_rational_rejects_nonrational():
    pts = [(p, Q(2) ** p) for p in range(1, 7)]
    with pytest.raises((NoFit, VerificationFailed)):
        fit_rational(pts, 1, 1)


def test_period_scales_f5():
    chain = build_chain(GFKind("F", 5).fe(), 120)
    rep = detect_period(chain)
    pts = period_scale_values(chain, 0, rep)
    rf = fit_rational(pts, 1, 1)
    assert all(rf(Q(p)) == Q(-1) / (5 * p) for p in range(1, 8))


def test_period_scales_f4():
    chain = build_chain(GFKind("F", 4).fe(), 120)
    pts = period_scale_values(chain, 1)
    rf = fit_rational(pts, 1, 1)
    assert rf == RationalFunction(Poly([-1, -1]), Poly([0, 1]))


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.integers(1, 3))
def test_fit_recovers_polynomial(coeffs, verify):
    poly = Poly(coeffs)
    deg = max(poly.degree, 0)
    pts = [(n, poly(Q(n))) for n in range(deg + 1 + verify)]
    assert fit_polynomial(pts, verify).poly == poly
