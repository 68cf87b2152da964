"""Quadratic functional equations and the continued-fraction transformation tau.

A series F is described by ``F = x^d / (u + x^k v F)`` with u, v rational
functions that are regular and nonzero at 0.  ``tau`` maps such an equation
to a new one whose Hankel determinants are tied to those of F by either a
scale factor ``u(0)^n`` or an index shift by ``d + 1`` with a sign.
Iterating ``tau`` gives a :class:`Chain`; walking the recorded steps
evaluates Hankel determinants without ever forming a matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Union

from gmpy2 import mpq

from .algebra import (
    ONE,
    ZERO,
    Poly,
    Q,
    Rational,
    RationalFunction,
    binom,
    rational_to_str,
    series_truncation_poly,
)
from .errors import ChainError, ChainTooShort, HankelCFError, NoPeriodFound, NotCanonicalizable


@dataclass(frozen=True)
class QuadraticFE:
    """F = x^d / (u + x^k v F)."""

    d: int
    k: int
    u: RationalFunction
    v: RationalFunction

    def __post_init__(self):
        if self.d < 0:
            raise NotCanonicalizable(f"negative d={self.d}")
        if self.k < 1:
            raise NotCanonicalizable(f"k={self.k} < 1")
        for name in ("u", "v"):
            f = getattr(self, name)
            if not f.den[0]:
                raise NotCanonicalizable(f"{name} has a pole at 0")
            if not f.num[0]:
                raise NotCanonicalizable(f"{name} vanishes at 0")

    @property
    def u0(self) -> Rational:
        return self.u.num[0] / self.u.den[0]

    def relation(self) -> tuple[Poly, Poly, Poly]:
        """Polynomials (a, b, c) with a F^2 + b F + c = 0."""
        ud, vd = self.u.den, self.v.den
        a = (self.v.num * ud).shift(self.k)
        b = self.u.num * vd
        c = -(ud * vd).shift(self.d)
        return a, b, c

    def degrees(self) -> tuple[int, int, int, int]:
        return (self.u.num.degree, self.u.den.degree, self.v.num.degree, self.v.den.degree)

    def to_json(self) -> dict:
        return {"d": self.d, "k": self.k, "u": self.u.to_json(), "v": self.v.to_json()}

    @classmethod
    def from_json(cls, data) -> QuadraticFE:
        return cls(
            int(data["d"]),
            int(data["k"]),
            RationalFunction.from_json(data["u"]),
            RationalFunction.from_json(data["v"]),
        )

    def format(self) -> str:
        xd = "1" if self.d == 0 else ("x" if self.d == 1 else f"x^{self.d}")
        xk = "x" if self.k == 1 else f"x^{self.k}"
        return f"F = {xd} / ({self.u} + {xk}*({self.v})*F)"


@dataclass(frozen=True)
class Scale:
    """Case u(0) != 1: H_n(F) = u0^(-n) H_n(next)."""

    u0: Rational

    def __post_init__(self):
        if self.u0 == 0 or self.u0 == 1:
            raise ValueError("scale factor must differ from 0 and 1")

    def to_json(self) -> dict:
        return {"scale": rational_to_str(self.u0)}


@dataclass(frozen=True)
class Shift:
    """Case u(0) == 1: H_n(F) = sign * H_{n-d-1}(next)."""

    d: int
    sign: int

    def __post_init__(self):
        if self.sign != shift_sign(self.d):
            raise ValueError(f"sign of a shift with d={self.d} must be {shift_sign(self.d)}")

    @property
    def drop(self) -> int:
        return self.d + 1

    def to_json(self) -> dict:
        return {"shift": {"d": self.d, "sign": self.sign}}


ChainStep = Union[Scale, Shift]


def shift_sign(d: int) -> int:
    return -1 if binom(d + 1, 2) % 2 else 1


def step_from_json(data) -> ChainStep:
    if "scale" in data:
        return Scale(Q(data["scale"]))
    s = data["shift"]
    return Shift(int(s["d"]), int(s["sign"]))


def decompose_u(fe: QuadraticFE) -> tuple[Poly, RationalFunction]:
    """Split u = u_L + x^(d+2) u_H with deg u_L <= d + 1."""
    uL = series_truncation_poly(fe.u, fe.d + 1)
    w = (fe.u.num - uL * fe.u.den).shift(-(fe.d + 2))
    return uL, RationalFunction(w, fe.u.den)


def _canonicalize_polys(a: Poly, b: Poly, c: Poly) -> QuadraticFE:
    # T solves a T^2 + b T + c = 0, i.e. T = -c / (b + a T)
    if not c:
        raise NotCanonicalizable("constant coefficient is zero")
    if not b:
        raise NotCanonicalizable("linear coefficient is zero, so u would vanish")
    if not a:
        raise NotCanonicalizable("relation is linear, so v would vanish")
    oa, ob, oc = a.order(), b.order(), c.order()
    d = oc - ob
    k = oa - ob
    if d < 0:
        raise NotCanonicalizable(f"solution would have negative order {d}")
    if k < 1:
        raise NotCanonicalizable(f"k={k} < 1")
    bh, ch, ah = b.shift(-ob), c.shift(-oc), a.shift(-oa)
    return QuadraticFE(d, k, RationalFunction(-bh, ch), RationalFunction(-ah, ch))


def canonicalize(alpha, beta, gamma) -> QuadraticFE:
    """Normalize alpha T^2 + beta T + gamma = 0 to T = x^d / (u + x^k v T)."""
    alpha, beta, gamma = (
        f if isinstance(f, RationalFunction) else RationalFunction(f) for f in (alpha, beta, gamma)
    )
    a = alpha.num * beta.den * gamma.den
    b = beta.num * alpha.den * gamma.den
    c = gamma.num * alpha.den * beta.den
    return _canonicalize_polys(a, b, c)


def tau(fe: QuadraticFE) -> tuple[ChainStep, QuadraticFE]:
    u0 = fe.u0
    if u0 != 1:
        inv = 1 / u0
        return Scale(u0), QuadraticFE(fe.d, fe.k, fe.u * inv, fe.v * (inv * inv))

    d, k = fe.d, fe.k
    un, ud = fe.u.num, fe.u.den
    vn, vd = fe.v.num, fe.v.den
    uL = series_truncation_poly(fe.u, d + 1)
    # u_H = wH / ud,  u_L - x^(d+2) u_H = (2 u_L ud - un) / ud
    wH = (un - uL * ud).shift(-(d + 2))
    Dn = uL * ud * 2 - un
    L = ud * vd
    if k == 1:
        # G = N / (D - x^(d+1) G), then G = G(0) + x T
        Nn = -(vn * ud) - (uL * wH * vd).shift(1)
        g0 = Nn[0] / L[0]
        a = -L.shift(d + 2)
        b = Dn * vd - (L * (2 * g0)).shift(d + 1)
        c = (Dn * vd * g0 - (L * (g0 * g0)).shift(d + 1) - Nn).shift(-1)
    else:
        # G = N / (D - x^(d+2) G)
        Nn = -(vn * ud).shift(k - 2) - uL * wH * vd
        a = L.shift(d + 2)
        b = -(Dn * vd)
        c = Nn
    return Shift(d, shift_sign(d)), _canonicalize_polys(a, b, c)


@dataclass(frozen=True)
class Chain:
    initial: QuadraticFE
    steps: tuple = ()  # of (ChainStep, QuadraticFE after the step)

    def __len__(self):
        return len(self.steps)

    @property
    def last(self) -> QuadraticFE:
        return self.steps[-1][1] if self.steps else self.initial

    @property
    def total_drop(self) -> int:
        return sum(s.drop for s, _ in self.steps if isinstance(s, Shift))

    def fes(self) -> list[QuadraticFE]:
        """FEs in order, starting with the initial one."""
        return [self.initial] + [fe for _, fe in self.steps]

    def extended(self, extra_steps: int) -> Chain:
        steps = list(self.steps)
        fe = self.last
        for _ in range(extra_steps):
            try:
                step, fe = tau(fe)
            except HankelCFError as exc:
                raise ChainError(len(steps), exc) from exc
            steps.append((step, fe))
        return Chain(self.initial, tuple(steps))

    def extended_to_drop(self, drop: int, max_steps: int | None = None) -> Chain:
        """Grow until the shifts cover index ``drop`` (or max_steps is hit)."""
        if max_steps is None:
            max_steps = 4 * drop + 64
        steps = list(self.steps)
        total = self.total_drop
        fe = self.last
        while total < drop and len(steps) < max_steps:
            try:
                step, fe = tau(fe)
            except HankelCFError as exc:
                raise ChainError(len(steps), exc) from exc
            steps.append((step, fe))
            if isinstance(step, Shift):
                total += step.drop
        return Chain(self.initial, tuple(steps))

    def to_json(self, include_fes: bool = True) -> dict:
        out = {"schema": 1, "initial": self.initial.to_json(), "steps": []}
        for step, fe in self.steps:
            entry = step.to_json()
            if include_fes:
                entry["fe"] = fe.to_json()
            out["steps"].append(entry)
        return out

    def dumps(self, include_fes: bool = True) -> str:
        return json.dumps(self.to_json(include_fes), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> Chain:
        initial = QuadraticFE.from_json(data["initial"])
        steps = []
        fe = initial
        for entry in data["steps"]:
            step = step_from_json(entry)
            if "fe" in entry:
                fe = QuadraticFE.from_json(entry["fe"])
            else:
                _, fe = tau(fe)
            steps.append((step, fe))
        return cls(initial, tuple(steps))


def build_chain(fe0: QuadraticFE, max_steps: int) -> Chain:
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    return Chain(fe0).extended(max_steps)


def hankel_from_chain(chain: Chain, n: int) -> Rational:
    """H_n of the initial FE's series, by walking the recorded steps."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    m, c = n, ONE
    consumed = 0
    for step, _ in chain.steps:
        if isinstance(step, Scale):
            if m:
                c *= step.u0 ** (-m)
        else:
            if m == 0:
                return c
            if m <= step.d:
                return ZERO
            if step.sign < 0:
                c = -c
            m -= step.d + 1
        consumed += 1
    if m == 0:
        return c
    raise ChainTooShort(n, consumed)


def _walk_sequence(steps, N: int):
    values = [ZERO] * (N + 1)
    values[0] = ONE
    value, drop, inv_scales = ONE, 0, ONE
    for step, _ in steps:
        if drop >= N:
            break
        if isinstance(step, Scale):
            inv_scales /= step.u0
            continue
        # H at drop + 1 .. drop + d vanish; H at drop + d + 1 follows from H at drop
        value = value * inv_scales ** (step.d + 1)
        if step.sign < 0:
            value = -value
        drop += step.d + 1
        if drop <= N:
            values[drop] = value
    return values, drop


def hankel_sequence(chain: Chain, N: int, *, grow: bool = False) -> list[Rational]:
    """[H_0, ..., H_N] from a single pass over the chain.

    Nonzero determinants only occur at the cumulative shift drops, and the
    value at the next drop is the previous one times the sign and the
    accumulated inverse scale factors raised to (d + 1).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if grow and chain.total_drop < N:
        chain = chain.extended_to_drop(N)
    values, drop = _walk_sequence(chain.steps, N)
    if drop < N:
        raise ChainTooShort(N, len(chain.steps), largest_resolvable=drop)
    return values


def hankel_values(fe0: QuadraticFE, N: int) -> list[Rational]:
    """Convenience: build a long enough chain for fe0 and return H_0..H_N."""
    return hankel_sequence(Chain(fe0).extended_to_drop(N), N)


@dataclass(frozen=True)
class Arrow:
    """One displayed arrow of a chain: an optional Scale followed by a Shift."""

    scale: Rational | None
    shift: Shift
    source: QuadraticFE
    target: QuadraticFE
    start_step: int

    @property
    def signature(self) -> tuple:
        return (self.scale is not None, self.shift.d, self.shift.sign, self.source.k) + self.source.degrees()


def arrows(chain: Chain) -> list[Arrow]:
    out = []
    src = chain.initial
    pending = None
    start = 0
    for i, (step, fe) in enumerate(chain.steps):
        if isinstance(step, Scale):
            pending = step.u0
            continue
        out.append(Arrow(pending, step, src, fe, start))
        pending = None
        src = fe
        start = i + 1
    return out


@dataclass(frozen=True)
class PeriodReport:
    order: int
    d_pattern: list
    sign_pattern: list
    index_drop_per_period: int
    pre_period: int = 0
    scale_pattern: list = field(default_factory=list)
    pure: bool = False
    arrows_observed: int = 0

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "pre_period": self.pre_period,
            "d_pattern": list(self.d_pattern),
            "sign_pattern": list(self.sign_pattern),
            "scale_pattern": list(self.scale_pattern),
            "index_drop_per_period": self.index_drop_per_period,
            "pure": self.pure,
            "arrows_observed": self.arrows_observed,
        }


def detect_period(chain: Chain, min_repeats: int = 2) -> PeriodReport:
    """Arrow period of the chain's step signatures.

    Periods are counted in arrows (scale+shift pairs). Among the periods
    with at least ``min_repeats`` full repetitions visible, the one with the
    shortest pre-period wins, and the smallest such period is reported.
    """
    arr = arrows(chain)
    sigs = [a.signature for a in arr]
    L = len(sigs)
    best = None
    for q in range(1, L // min_repeats + 1):
        s = L - q
        while s > 0 and sigs[s - 1] == sigs[s - 1 + q]:
            s -= 1
        if L - s < min_repeats * q:
            continue
        # a short coincidental tail must not beat a period that explains more of the chain
        if best is None or s < best[0]:
            best = (s, q)
    if best is not None:
        s, q = best
        block = arr[s : s + q]
        pure = all(arr[i].source == arr[i + q].source for i in range(s, L - q))
        return PeriodReport(
            order=q,
            d_pattern=[a.shift.d for a in block],
            sign_pattern=[a.shift.sign for a in block],
            index_drop_per_period=sum(a.shift.drop for a in block),
            pre_period=s,
            scale_pattern=[a.scale is not None for a in block],
            pure=pure,
            arrows_observed=L,
        )
    raise NoPeriodFound(f"no period with {min_repeats} repeats among {L} arrows")


def iter_tau(fe: QuadraticFE) -> Iterator[tuple[ChainStep, QuadraticFE]]:
    while True:
        step, fe = tau(fe)
        yield step, fe
