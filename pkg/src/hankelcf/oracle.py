"""Brute-force Hankel determinants: fraction-free Bareiss and elimination mod p."""

from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq, mpz

from .algebra import Q, Rational
from .genfunc import GFKind

DEFAULT_PRIME = 274177


def det_bareiss(M: Sequence[Sequence]) -> Rational:
    """Exact determinant by one-step fraction-free elimination.

    Rational input is first cleared to integers by a common denominator,
    so every division inside the loop is exact.
    """
    n = len(M)
    if n == 0:
        return Q(1)
    rows = [[Q(x) for x in row] for row in M]
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")
    denom = mpz(1)
    for row in rows:
        for x in row:
            d = x.denominator
            if d != 1:
                denom = denom * d // _gcd(denom, d)
    A = [[mpz(x * denom) for x in row] for row in rows]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if piv is None:
                return Q(0)
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = mpz(0)
        prev = akk
    det = sign * A[n - 1][n - 1]
    return mpq(det, denom**n)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def det_mod_p(M: Sequence[Sequence[int]], p: int = DEFAULT_PRIME) -> int:
    """Determinant modulo a prime p; pivots on the first nonzero entry of each column."""
    n = len(M)
    A = [[int(x) % p for x in row] for row in M]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        akk = A[k][k]
        det = det * akk % p
        inv = pow(akk, p - 2, p)
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            f = rowi[k] * inv % p
            if f:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] - f * rowk[j]) % p
    return det % p


def hankel_matrix(seq: Sequence, n: int) -> list[list]:
    if len(seq) < 2 * n - 1:
        raise ValueError(f"need {2 * n - 1} terms for a {n}x{n} Hankel matrix")
    return [[seq[i + j] for j in range(n)] for i in range(n)]


def hankel_det(seq: Sequence, n: int) -> Rational:
    """Exact H_n of an arbitrary coefficient sequence."""
    return det_bareiss(hankel_matrix(seq, n))


def _residue(q: Rational, p: int) -> int:
    return int(q.numerator) * pow(int(q.denominator), p - 2, p) % p


def hankel_naive(kind: GFKind, n: int, mode: str = "exact", p: int = DEFAULT_PRIME):
    """H_n of kind's coefficient sequence; mode is "exact" or "modp"."""
    seq = kind.coeffs(max(2 * n - 1, 0))
    M = hankel_matrix(seq, n)
    if mode == "exact":
        return det_bareiss(M)
    if mode == "modp":
        return det_mod_p([[_residue(x, p) for x in row] for row in M], p)
    raise ValueError(f"unknown mode {mode!r}")


def to_residue(q, p: int = DEFAULT_PRIME) -> int:
    return _residue(Q(q), p)
