"""Sign normalization, exact polynomial/rational fitting and degree tables."""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

from .algebra import Poly, Q, Rational, RationalFunction, binom, nullspace, rational_to_str
from .cfrac import Chain, PeriodReport, arrows, detect_period, hankel_sequence
from .errors import NoFit, VerificationFailed
from .genfunc import GFKind


@dataclass(frozen=True)
class SignPattern:
    """One of the three sign normalizations: none, (-1)^(tn), (-1)^(n*binom(t,2))."""

    kind: str = "none"
    t: int = 0

    KINDS = ("none", "tn", "binom")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown sign kind {self.kind!r}")

    def __call__(self, n: int) -> int:
        if self.kind == "none":
            return 1
        e = self.t * n if self.kind == "tn" else n * binom(self.t, 2)
        return -1 if e % 2 else 1

    def __str__(self):
        if self.kind == "none":
            return "1"
        if self.kind == "tn":
            return f"(-1)^({self.t}n)"
        return f"(-1)^(n*binom({self.t},2))"


@dataclass(frozen=True)
class GuessResult:
    sign: SignPattern
    poly: Poly
    fitted_on: tuple
    verified_on: tuple

    @property
    def degree(self) -> float:
        return self.poly.degree if self.poly else -inf

    def __call__(self, n: int) -> Rational:
        return self.sign(n) * self.poly(Q(n))

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "sign": str(self.sign),
            "poly": [rational_to_str(c) for c in self.poly.coeffs],
            "poly_text": self.poly.format("n"),
            "degree": self.degree if self.poly else None,
            "fitted_on": list(self.fitted_on),
            "verified_on": list(self.verified_on),
        }


def lagrange(points) -> Poly:
    """Interpolating polynomial through (x, y) pairs, exact over Q."""
    xs = [Q(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = Poly()
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        yi = Q(yi)
        if not yi:
            continue
        basis = Poly([1])
        denom = Q(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom *= xi - xj
        result = result + basis * (yi / denom)
    return result


def fit_polynomial(points, verify_count: int = 1, sign: SignPattern = SignPattern()) -> GuessResult:
    """Interpolate sign-normalized values through all but the last verify_count points.

    Points are (n, H) pairs; the fit is on sign(n)*H. The remaining points
    must be hit exactly or VerificationFailed names the first miss.
    """
    points = sorted((int(n), Q(v)) for n, v in points)
    if len(points) <= verify_count:
        raise ValueError("need at least one fitting point")
    norm = [(n, sign(n) * v) for n, v in points]
    fit, check = norm[: len(norm) - verify_count], norm[len(norm) - verify_count :]
    poly = lagrange(fit)
    for n, v in check:
        got = poly(Q(n))
        if got != v:
            raise VerificationFailed(n, v, got)
    verified = (check[0][0], check[-1][0]) if check else ()
    return GuessResult(sign, poly, (fit[0][0], fit[-1][0]), verified)


def class_sequence(kind: GFKind, modulus: int, j: int, N: int, chain: Chain | None = None) -> list[Rational]:
    """[H_{modulus*n + j} for n = 0..N]."""
    top = modulus * N + j
    if chain is None:
        chain = Chain(kind.fe())
    values = hankel_sequence(chain, top, grow=True)
    return [values[modulus * n + j] for n in range(N + 1)]


def class_structure(kind: GFKind) -> tuple[int, SignPattern]:
    """Residue modulus and sign normalization under which classes are polynomial."""
    r, t = kind.r, kind.r // 2
    if kind.family == "F":
        if r % 2:
            return r, SignPattern("tn", t)
        return t, SignPattern("binom", t)
    if r % 2:
        return r, SignPattern()
    return r, SignPattern("tn", t)


# rows of the published degree tables; None marks the identically zero class
TABLE_F_ODD = {
    3: (0, 0, None),
    5: (0, 0, 1, None, 1),
    7: (0, 0, 3, 2, None, 2, 3),
    9: (0, 0, 5, 6, 3, None, 3, 6, 5),
    11: (0, 0, 7, 10, 9, 4, None, 4, 9, 10, 7),
    13: (0, 0, 9, 14, 15, 12, 5, None, 5, 12, 15, 14, 9),
}
TABLE_F_EVEN = {
    4: (1, 1),
    6: (2, 2, 3),
    8: (3, 3, 6, 6),
    10: (4, 4, 9, 10, 9),
    12: (5, 5, 12, 15, 15, 12),
}


def conjectured_degrees(kind: GFKind) -> list:
    """Predicted degree per residue class i = 0..modulus-1 (None for a zero class)."""
    r, t = kind.r, kind.r // 2
    modulus, _ = class_structure(kind)
    deg: dict[int, int | None] = {}
    if t == 0:
        deg = {1: 0}
    elif kind.family == "F" and r % 2:
        for j in range(1, t + 1):
            deg[j] = deg[r + 1 - j] = (j - 1) * (r - 2 * j)
        deg[t + 1] = None
    elif kind.family == "F":
        if t == 1:
            deg = {1: 0, 2: 0}
        # the formula is stated for all j <= t, but only its lower half is
        # consistent with the palindromic table; the upper half mirrors it
        for j in range(1, (t + 1) // 2 + 1):
            deg[j] = deg[t + 1 - j] = (2 * j - 1) * (t - j)
    elif r % 2:
        for j in range(1, (r + 3) // 4 + 1):
            for c in (j, t + j, t + 2 - j, r + 1 - j):
                deg[c] = (2 * j - 1) * (t + 1 - j)
    else:
        for j in range(1, t + 1):
            deg[j] = deg[r + 1 - j] = (j - 1) * (r + 1 - 2 * j)
    # class `modulus` is class 0 shifted by one period
    return [deg.get(i if i else modulus, deg.get(i)) for i in range(modulus)]


def conjecture_g_odd_overlaps(r: int) -> list:
    """Classes of the odd-r G conjecture assigned by more than one j, with their degrees."""
    t = r // 2
    seen: dict[int, set] = {}
    for j in range(1, (r + 3) // 4 + 1):
        for c in (j, t + j, t + 2 - j, r + 1 - j):
            seen.setdefault(c % r, set()).add((2 * j - 1) * (t + 1 - j))
    return sorted((c, sorted(v)) for c, v in seen.items() if len(v) > 1)


@dataclass
class DegreeRow:
    cls: int
    expected: int | None
    fitted: float
    ok: bool
    guess: GuessResult | None = None

    def to_json(self) -> dict:
        return {
            "class": self.cls,
            "expected": self.expected,
            "fitted": None if self.fitted == -inf else self.fitted,
            "pass": self.ok,
        }


def fit_class(kind: GFKind, j: int, max_degree: int, verify: int = 3, chain: Chain | None = None) -> GuessResult:
    modulus, sign = class_structure(kind)
    N = max_degree + verify
    vals = class_sequence(kind, modulus, j, N, chain)
    return fit_polynomial(list(enumerate(vals)), verify, sign)


def check_degree_tables(kind: GFKind, r: int | None = None, margin: int = 2, verify: int = 3, chain: Chain | None = None) -> list[DegreeRow]:
    """Fit every residue class and compare its degree with the table/formula.

    Each class is fitted at the expected degree plus ``margin`` and checked
    on ``verify`` further points, so both under- and over-estimates show up.
    """
    if r is not None and r != kind.r:
        kind = GFKind(kind.family, r)
    if chain is None:
        chain = Chain(kind.fe())
    expected = conjectured_degrees(kind)
    table = TABLE_F_ODD if kind.r % 2 else TABLE_F_EVEN
    if kind.family == "F" and kind.r in table:
        expected = list(table[kind.r])
    rows = []
    for i, e in enumerate(expected):
        bound = (e if e is not None else 0) + margin
        try:
            g = fit_class(kind, i, bound, verify, chain)
            fitted = g.degree
        except VerificationFailed:
            g, fitted = None, inf
        ok = fitted == (-inf if e is None else e)
        rows.append(DegreeRow(i, e, fitted, ok, g))
    return rows


def fit_rational(points, num_deg: int, den_deg: int) -> RationalFunction:
    """Rational function num/den in p through (p, value) pairs.

    Solves value*den(p) - num(p) = 0 by undetermined coefficients on the first
    num_deg+den_deg+1 points (after trying smaller degree pairs first), then
    checks every remaining point exactly.
    """
    points = [(Q(p), Q(v)) for p, v in points]
    need = num_deg + den_deg + 1
    if len(points) < need + 1:
        raise ValueError(f"need at least {need + 1} points")
    pairs = sorted(
        ((a, b) for a in range(num_deg + 1) for b in range(den_deg + 1)),
        key=lambda ab: (ab[0] + ab[1], ab[1]),
    )
    for a, b in pairs:
        fit = points[: a + b + 1]
        rows = []
        for p, v in fit:
            row = [-(p**i) for i in range(a + 1)] + [v * p**i for i in range(b + 1)]
            rows.append(row)
        basis = nullspace(rows)
        for vec in basis:
            num, den = Poly(vec[: a + 1]), Poly(vec[a + 1 :])
            if not den or any(not den(p) for p, _ in points):
                continue
            rf = RationalFunction(num, den)
            if all(rf(p) == v for p, v in points):
                return rf
    # largest template fits but misses a check point: report where
    rows = [[-(p**i) for i in range(num_deg + 1)] + [v * p**i for i in range(den_deg + 1)] for p, v in points[:need]]
    basis = nullspace(rows)
    if not basis:
        raise NoFit("homogeneous system has only the trivial solution")
    num, den = Poly(basis[0][: num_deg + 1]), Poly(basis[0][num_deg + 1 :])
    for p, v in points:
        if not den or not den(p) or num(p) / den(p) != v:
            raise VerificationFailed(p, v, None if not den or not den(p) else num(p) / den(p))
    raise NoFit("no admissible denominator")


def period_scale_values(chain: Chain, position: int, report: PeriodReport | None = None) -> list[tuple[int, Rational]]:
    """(p, u0) for the scale at arrow ``position`` of the p-th period, p = 1, 2, ..."""
    if report is None:
        report = detect_period(chain)
    arr = arrows(chain)
    out = []
    p = 1
    while True:
        idx = report.pre_period + (p - 1) * report.order + position
        if idx >= len(arr):
            return out
        if arr[idx].scale is not None:
            out.append((p, arr[idx].scale))
        p += 1


def check_sign_removal(result: GuessResult, values) -> bool:
    """sign(n)*poly(n) reproduces the raw values on every fitted/verified point."""
    lo = result.fitted_on[0]
    hi = result.verified_on[1] if result.verified_on else result.fitted_on[1]
    return all(result(n) == Q(values[n]) for n in range(lo, hi + 1))


__all__ = [
    "SignPattern",
    "GuessResult",
    "lagrange",
    "fit_polynomial",
    "class_sequence",
    "class_structure",
    "conjectured_degrees",
    "conjecture_g_odd_overlaps",
    "check_degree_tables",
    "fit_rational",
    "period_scale_values",
    "check_sign_removal",
    "TABLE_F_ODD",
    "TABLE_F_EVEN",
]
