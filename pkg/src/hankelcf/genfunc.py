"""Coefficient sequences and functional equations of C(x)^r and C(x)^r/sqrt(1-4x)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from gmpy2 import mpq

from .algebra import ZERO, Poly, PowerSeries, Q, Rational, RationalFunction, binom, nullspace, series_expand
from .cfrac import QuadraticFE, canonicalize
from .errors import DivergentIteration, NoRelationFound


@dataclass(frozen=True)
class GFKind:
    family: str  # "F" or "G"
    r: int

    def __post_init__(self):
        if self.family not in ("F", "G"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.r < 0 or (self.family == "F" and self.r < 1):
            raise ValueError(f"r={self.r} out of range for family {self.family}")

    def coeff(self, n: int) -> Rational:
        return conv_coeff(n, self.r) if self.family == "F" else g_coeff(n, self.r)

    def coeffs(self, count: int) -> list[Rational]:
        return [self.coeff(n) for n in range(count)]

    def fe(self) -> QuadraticFE:
        return build_fe_F(self.r) if self.family == "F" else build_fe_G(self.r)

    def __str__(self):
        return f"{self.family}(x,{self.r})"


def catalan_coeff(n: int) -> Rational:
    return mpq(binom(2 * n, n), n + 1)


def conv_coeff(n: int, r: int) -> Rational:
    """Coefficient of x^n in C(x)^r, r/(2n+r) * binom(2n+r, n)."""
    if r == 0:
        return mpq(1 if n == 0 else 0)
    return mpq(r * binom(2 * n + r, n), 2 * n + r)


def g_coeff(n: int, r: int) -> Rational:
    return mpq(binom(2 * n + r, n))


def odd_coefficient(t: int, i: int) -> Rational:
    """(2t+1)/(2t-2i+1) * binom(2t-i, i)."""
    return mpq((2 * t + 1) * binom(2 * t - i, i), 2 * t - 2 * i + 1)


def even_coefficient(t: int, i: int) -> Rational:
    """2t/(2t-i) * binom(2t-i, i)."""
    return mpq(2 * t * binom(2 * t - i, i), 2 * t - i)


def fe_F_polynomial(r: int) -> Poly:
    """P with F(x,r) = -1 / (P + x^r F(x,r))."""
    t = r // 2
    if r % 2:
        return Poly([(-1) ** (i + 1) * odd_coefficient(t, i) for i in range(t + 1)])
    return Poly([(-1) ** (i + 1) * even_coefficient(t, i) for i in range(t + 1)])


def fe_G_polynomial(r: int) -> Poly:
    """Q with G(x,r) = 1 / ((1-4x)(x^r G(x,r) + Q))."""
    t = r // 2
    if r % 2:
        return Poly([(-1) ** i * binom(2 * t - i, i) for i in range(t + 1)])
    return Poly([(-1) ** i * binom(2 * t - i - 1, i) for i in range(t)])


def build_fe_F(r: int) -> QuadraticFE:
    if r < 1:
        raise ValueError("r must be positive")
    if r == 1:
        # x C^2 - C + 1 = 0
        return canonicalize(Poly([0, 1]), -1, 1)
    u = RationalFunction.from_poly(-fe_F_polynomial(r))
    return QuadraticFE(0, r, u, RationalFunction(-1))


def build_fe_G(r: int) -> QuadraticFE:
    if r < 1:
        raise ValueError("r must be positive; G(x,0)^2 = 1/(1-4x) has no canonical form")
    one_minus_4x = Poly([1, -4])
    u = RationalFunction.from_poly(one_minus_4x * fe_G_polynomial(r))
    return QuadraticFE(0, r, u, RationalFunction.from_poly(one_minus_4x))


def series_from_fe(fe: QuadraticFE, N: int) -> PowerSeries:
    """Power-series solution of fe through x^N.

    This is the fixed-point iteration F <- x^d / (u + x^k v F) run one
    coefficient at a time: since k >= 1, the coefficient of x^n only depends
    on coefficients below n, so each is final as soon as it is computed.
    """
    if fe.k < 1 or not fe.u.num[0] or not fe.u.den[0]:
        raise DivergentIteration("iteration does not gain precision for this equation")

    us = series_expand(fe.u, N).coeffs
    vs = series_expand(fe.v, N).coeffs
    u0inv = 1 / us[0]
    f: list = []
    sq: list = []  # coefficients of F^2
    for n in range(N + 1):
        acc = Q(1) if n == fe.d else ZERO
        for j in range(n):
            if f[j]:
                acc -= f[j] * us[n - j]
        m = n - fe.k
        for i in range(m + 1):
            acc -= vs[m - i] * sq[i]
        f.append(acc * u0inv)
        s = ZERO
        for a in range(n + 1):
            s += f[a] * f[n - a]
        sq.append(s)
    return PowerSeries(f, N)


def series_of(kind: GFKind, N: int) -> PowerSeries:
    return PowerSeries(kind.coeffs(N + 1), N)


def derive_fe(series: PowerSeries, degA: int, degB: int, degC: int) -> tuple[Poly, Poly, Poly]:
    """Minimal-degree (a, b, c) with a S^2 + b S + c = 0 modulo x^(order+1).

    Degree triples are tried in order of increasing total degree; the first
    one with a nonzero solution space wins, and a solution space of
    dimension above one is reported as ambiguous.
    """
    N = series.order
    if N < degA + degB + degC + 3:
        raise ValueError("series too short for the requested degree bounds")
    s = series.coeffs
    s2 = (series * series).coeffs
    triples = sorted(
        product(range(degA + 1), range(degB + 1), range(degC + 1)),
        key=lambda t: (sum(t), t),
    )
    for da, db, dc in triples:
        # unknowns: a_0..a_da, b_0..b_db, c_0..c_dc
        rows = []
        for n in range(N + 1):
            row = [s2[n - i] if n >= i else ZERO for i in range(da + 1)]
            row += [s[n - i] if n >= i else ZERO for i in range(db + 1)]
            row += [Q(1) if n == i else ZERO for i in range(dc + 1)]
            rows.append(row)
        basis = nullspace(rows)
        if not basis:
            continue
        if len(basis) > 1:
            raise NoRelationFound(f"relation at degrees {(da, db, dc)} is not unique")
        v = basis[0]
        a = Poly(v[: da + 1])
        b = Poly(v[da + 1 : da + db + 2])
        c = Poly(v[da + db + 2 :])
        lead = next(p for p in (c, b, a) if p)
        f = 1 / lead[lead.order()]
        return a * f, b * f, c * f
    raise NoRelationFound(f"no quadratic relation within degrees {(degA, degB, degC)}")
