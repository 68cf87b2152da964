"""Polynomial identities in y behind the functional equations, and the Z-sums."""

from __future__ import annotations

from gmpy2 import mpq

from .algebra import Poly, PowerSeries, Rational, binom
from .genfunc import GFKind, build_fe_F, even_coefficient, odd_coefficient, series_of

Y = Poly([0, 1])
Y1 = Poly([1, 1])  # y + 1


def _pow_cache(p: Poly, top: int) -> list[Poly]:
    out = [Poly([1])]
    for _ in range(top):
        out.append(out[-1] * p)
    return out


def f_identity_sides(t: int) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
    """(lhs, rhs) pairs for the odd and even C(x)^r identities at t."""
    yp = _pow_cache(Y, 2 * t + 1)
    y1 = _pow_cache(Y1, 2 * t + 1)
    odd_l = y1[2 * t + 1] - 1
    odd_r = Poly()
    for i in range(t + 1):
        odd_r = odd_r + y1[i] * yp[2 * t - 2 * i + 1] * odd_coefficient(t, i)
    even_l = y1[2 * t] + 1
    even_r = Poly()
    for i in range(t + 1):
        even_r = even_r + y1[i] * yp[2 * t - 2 * i] * even_coefficient(t, i)
    return (odd_l, odd_r), (even_l, even_r)


def verify_F_identity(t: int) -> bool:
    (ol, orr), (el, er) = f_identity_sides(t)
    return ol == orr and el == er


def g_identity_sides(t: int) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
    yp = _pow_cache(Y, 2 * t + 1)
    y1 = _pow_cache(Y1, 2 * t + 2)
    odd_l = y1[2 * t + 1] + 1
    odd_r = Poly()
    for i in range(t + 1):
        c = binom(2 * t - i, i)
        odd_r = odd_r - y1[i] * yp[2 * t + 1 - 2 * i] * c + y1[i + 1] * yp[2 * t - 2 * i] * (2 * c)
    even_l = y1[2 * t] - 1
    even_r = Poly()
    for i in range(t):
        c = binom(2 * t - i - 1, i)
        even_r = even_r - y1[i] * yp[2 * t - 2 * i] * c + y1[i + 1] * yp[2 * t - 2 * i - 1] * (2 * c)
    return (odd_l, odd_r), (even_l, even_r)


def verify_G_identity(t: int) -> bool:
    (ol, orr), (el, er) = g_identity_sides(t)
    return ol == orr and el == er


def z_sum_F(t: int, m: int) -> Rational:
    if not 0 <= m <= 2 * t + 1:
        raise ValueError("need 0 <= m <= 2t+1")
    total = mpq(0)
    for i in range(min(t, m, 2 * t + 1 - m) + 1):
        sign = -1 if (m - i - 1) % 2 else 1
        total += sign * odd_coefficient(t, i) * binom(2 * t - 2 * i + 1, m - i)
    return total


def z_sum_G(t: int, m: int) -> Rational:
    if not 0 <= m <= 2 * t + 1:
        raise ValueError("need 0 <= m <= 2t+1")
    total = mpq(0)
    for i in range(min(t, m) + 1):
        sign = -1 if (m - i) % 2 else 1
        total += sign * binom(2 * t - i, i) * (binom(2 * t + 1 - 2 * i, m - i) - 2 * binom(2 * t - 2 * i, m - i - 1))
    return total


def check_z_recurrence_F(t: int, m: int) -> bool:
    """(2t+1)(m-2t-3) Z(t+1,m) = (m^2-2mt-3m+2t+3)(m-2t-1) Z(t,m), for 0 <= m <= 2t+1."""
    lhs = (2 * t + 1) * (m - 2 * t - 3) * z_sum_F(t + 1, m)
    rhs = (m * m - 2 * m * t - 3 * m + 2 * t + 3) * (m - 2 * t - 1) * z_sum_F(t, m)
    return lhs - rhs == 0


def check_z_recurrence_G(t: int, m: int) -> bool:
    lhs = (2 * m - 2 * t - 1) * (m - 2 * t - 3) * z_sum_G(t + 1, m)
    rhs = (m * m - 2 * t * m - m - 2 * t - 3) * (m - 2 * t - 1) * z_sum_G(t, m)
    return lhs - rhs == 0


def z_expected(family: str, t: int, m: int) -> int:
    """Boundary and vanishing values: zero inside, -1/1 (F) or 1/1 (G) at m = 0, 2t+1."""
    if m == 0:
        return -1 if family == "F" else 1
    if m == 2 * t + 1:
        return 1
    return 0


def substitution_check(r: int, order: int = 30) -> bool:
    """Put y = -C(x) into the identity for r and recover the equation of C(x)^r.

    Since x C^2 = C - 1 we have y + 1 = -x C^2, so the left side becomes
    s (x^r F^2 + 1) with s = -1 for odd r and +1 for even r, and the right
    side becomes -s F P(x) with P read off the identity's coefficients. The resulting relation
    x^r F^2 + P F + 1 = 0 is compared on series to the given order, and
    against build_fe_F(r) up to a common factor.
    """
    if r < 2:
        raise ValueError("r >= 2")
    t = r // 2
    odd = r % 2 == 1
    C = series_of(GFKind("F", 1), order)
    F = series_of(GFKind("F", r), order)
    one = PowerSeries([1], order)
    x = PowerSeries([0, 1], order)
    y = -C
    if y + one != -(x * C * C):
        return False
    (ol, orr), (el, er) = f_identity_sides(t)
    lhs, rhs = (ol, orr) if odd else (el, er)

    def ev(poly: Poly) -> PowerSeries:
        acc = PowerSeries([0], order)
        for c in reversed(poly.coeffs):
            acc = acc * y + PowerSeries([c], order)
        return acc

    coeff = odd_coefficient if odd else even_coefficient
    P = Poly([(-1) ** (i + 1) * coeff(t, i) for i in range(t + 1)])
    Ps = PowerSeries(list(P.coeffs), order)
    xr = PowerSeries([0] * r + [1], order)
    s = -1 if odd else 1
    if ev(lhs) != (xr * F * F + one) * s:
        return False
    if ev(rhs) != F * Ps * (-s):
        return False
    if any((xr * F * F + Ps * F + one).coeffs):
        return False
    a, b, c = build_fe_F(r).relation()
    xr_poly = Poly.monomial(1, r)
    return a * P == b * xr_poly and a == c * xr_poly
