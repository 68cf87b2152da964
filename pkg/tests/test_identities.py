import pytest

from hankelcf.identities import (
    check_z_recurrence_F,
    check_z_recurrence_G,
    f_identity_sides,
    substitution_check,
    verify_F_identity,
    verify_G_identity,
    z_expected,
    z_sum_F,
    z_sum_G,
)


@pytest.mark.parametrize("t", range(1, 16))
def test_polynomial_identities(t):
    assert verify_F_identity(t)
    assert verify_G_identity(t)


def test_identity_t1_explicit():
    (ol, orr), (el, er) = f_identity_sides(1)
    # (y+1)^3 - 1 = y^3 + 3y^2 + 3y
    assert list(ol.coeffs) == [0, 3, 3, 1]
    assert ol == orr and el == er


@pytest.mark.parametrize("t", range(1, 12))
def test_z_values(t):
    for m in range(2 * t + 2):
        assert z_sum_F(t, m) == z_expected("F", t, m)
        assert z_sum_G(t, m) == z_expected("G", t, m)


@pytest.mark.parametrize("t", range(1, 11))
def test_z_recurrences(t):
    for m in range(2 * t + 2):
        assert check_z_recurrence_F(t, m)
        assert check_z_recurrence_G(t, m)


def test_z_range():
    with pytest.raises(ValueError):
        z_sum_F(2, 6)


@pytest.mark.parametrize("r", range(2, 12))
def test_substitution_recovers_equation(r):
    assert substitution_check(r, order=24)
