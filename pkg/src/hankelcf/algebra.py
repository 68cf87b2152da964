"""Exact univariate arithmetic: rationals, dense polynomials, rational
functions and truncated power series.

Rationals are ``gmpy2.mpq`` values; every other type here is an immutable
wrapper around tuples of them.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import NonUnitConstantTerm, PoleAtZero, ZeroDenominator, ZeroInput

Rational = type(mpq())

ZERO = mpq(0)
ONE = mpq(1)


def Q(value) -> Rational:
    """Coerce ints, strings ("3/4"), Fractions and mpq values to ``mpq``."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        return mpq(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


def rational_to_str(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def rational_from_str(s: str) -> Rational:
    return Q(s)


def is_integral(q) -> bool:
    return Q(q).denominator == 1


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return int(gmpy2.comb(n, k))


def _scaled_ints(coeffs) -> tuple:
    """(D, ints) with coeffs[i] == ints[i] / D."""
    D = gmpy2.mpz(1)
    for c in coeffs:
        d = c.denominator
        if d != 1 and D % d:
            D = gmpy2.lcm(D, d)
    if D == 1:
        return D, [c.numerator for c in coeffs]
    return D, [c.numerator * (D // c.denominator) for c in coeffs]


class Poly:
    """Dense univariate polynomial, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Q(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> Poly:
        # coeffs already mpq; only trailing zeros are stripped
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def monomial(cls, c, k: int) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Rational:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def order(self) -> int:
        """Exponent of the lowest nonzero term."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroInput("order of the zero polynomial")

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[rational_to_str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if i == 0:
                body = rational_to_str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{rational_to_str(mag)}{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def to_json(self) -> list:
        return [rational_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> Poly:
        return cls([Q(c) for c in data])

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = Q(other)
            if not s:
                return Poly()
            return Poly._raw([c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        # integer convolution over a common denominator
        da, ia = _scaled_ints(a)
        db, ib = _scaled_ints(b)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(ia):
            if not ca:
                continue
            for j, cb in enumerate(ib):
                out[i + j] += ca * cb
        den = da * db
        return Poly._raw([mpq(c, den) for c in out])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, s) -> Poly:
        return self * s

    def shift(self, k: int) -> Poly:
        """Multiply by x^k; negative k divides and requires the low terms to vanish."""
        if not self.coeffs or k == 0:
            return self
        if k > 0:
            return Poly._raw([ZERO] * k + list(self.coeffs))
        if any(self.coeffs[: -k]):
            raise ValueError("polynomial is not divisible by x^%d" % -k)
        return Poly._raw(list(self.coeffs[-k:]))

    def truncate(self, n: int) -> Poly:
        """Keep the terms of degree < n."""
        return Poly._raw(list(self.coeffs[:n]))

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def divmod(self, other: Poly):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(), self
        inv = 1 / other.lc
        quo = [ZERO] * (len(rem) - db)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            f = c * inv
            quo[i - db] = f
            base = i - db
            for j in range(db + 1):
                rem[base + j] -= f * b[j]
        return Poly._raw(quo), Poly._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self * (1 / self.lc)

    def integer_normalizer(self) -> Rational:
        """Factor s such that s*self has coprime integer coefficients and positive lc."""
        if not self.coeffs:
            return ONE
        den = 1
        for c in self.coeffs:
            den = gmpy2.lcm(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = gmpy2.gcd(g, c.numerator * (den // c.denominator))
        s = mpq(den, g)
        return -s if self.lc < 0 else s

    def primitive(self) -> Poly:
        return self * self.integer_normalizer()


X = Poly([0, 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    # common power of x first: cheap and very frequent here
    k = min(a.order(), b.order())
    if k:
        a, b = a.shift(-k), b.shift(-k)
    if a.degree < b.degree:
        a, b = b, a
    g = _primitive_prs_gcd(_int_primitive(a), _int_primitive(b))
    inv = mpq(1, g[-1])
    return Poly._raw([mpq(c) * inv for c in g]).shift(k)


def _int_primitive(p: Poly) -> list:
    s = p.integer_normalizer()
    return [gmpy2.mpz(c * s) for c in p.coeffs]


def _int_exact_div(a: list, b: list) -> list:
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        f = c // lb
        quo[i - db] = f
        base = i - db
        for j in range(db + 1):
            a[base + j] -= f * b[j]
    if any(a):
        raise ValueError("inexact polynomial division")
    return quo


def _content_free(c: list) -> list:
    g = 0
    for x in c:
        g = gmpy2.gcd(g, x)
        if g == 1:
            break
    if c[-1] < 0:
        g = -g
    return c if g == 1 else [x // g for x in c]


def _primitive_prs_gcd(a: list, b: list) -> list:
    """Primitive gcd of integer polynomials via pseudo-remainders."""
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        rem = a[:]
        db = len(b) - 1
        lb = b[-1]
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not c:
                continue
            base = i - db
            g = gmpy2.gcd(c, lb)
            fl, fc = lb // g, c // g
            for j in range(i):
                rem[j] *= fl
            for j in range(db):
                rem[base + j] -= fc * b[j]
            rem[i] = 0
        rem = rem[:db]
        while rem and not rem[-1]:
            rem.pop()
        if not rem:
            return b
        a, b = b, _content_free(rem)
    return [gmpy2.mpz(1)]


class RationalFunction:
    """Reduced quotient num/den with den primitive over Z and positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if not den:
            raise ZeroDenominator("rational function with zero denominator")
        if not num:
            self.num, self.den = Poly(), Poly([1])
            return
        if not reduced and den.degree > 0 and num.degree > 0:
            k = min(num.order(), den.order())
            if k:
                num, den = num.shift(-k), den.shift(-k)
            # num/den == (ni/sn) / (di/sd)
            sn, sd = num.integer_normalizer(), den.integer_normalizer()
            ni, di = _int_primitive(num), _int_primitive(den)
            g = _primitive_prs_gcd(ni, di)
            if len(g) > 1:
                # quotients of primitive integer polynomials stay primitive
                ni, di = _int_exact_div(ni, g), _int_exact_div(di, g)
            r = sd / sn
            self.num = Poly._raw([c * r for c in ni])
            self.den = Poly._raw([mpq(c) for c in di])
            return
        s = den.integer_normalizer()
        if s != 1:
            num, den = num * s, den * s
        self.num, self.den = num, den

    @classmethod
    def from_poly(cls, p: Poly) -> RationalFunction:
        return cls(p, Poly([1]), reduced=True)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Rational)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def format(self, var: str = "x") -> str:
        if self.den == 1:
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    __str__ = format

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> RationalFunction:
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(other)

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return RationalFunction(self.num * other, self.den, reduced=True)
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalFunction(self.num * (1 / Q(other)), self.den, reduced=True)
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def shift(self, k: int) -> RationalFunction:
        """Multiply by x^k."""
        if k >= 0:
            return RationalFunction(self.num.shift(k), self.den)
        return RationalFunction(self.num, self.den.shift(-k))

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def at_zero(self) -> Rational:
        if not self.den[0]:
            raise PoleAtZero("rational function has a pole at 0")
        return self.num[0] / self.den[0]

    def compose(self, p: Poly) -> RationalFunction:
        return RationalFunction(self.num.compose(p), self.den.compose(p))


def poly_gcd_reduce(num: Poly, den: Poly) -> RationalFunction:
    if not den:
        raise ZeroDenominator("zero denominator")
    return RationalFunction(num, den)


def _series_quotient(num: Sequence, den: Sequence, N: int) -> list:
    """First N+1 coefficients of num/den; den[0] must be nonzero."""
    d0inv = 1 / den[0]
    dl = len(den)
    out = []
    for n in range(N + 1):
        acc = num[n] if n < len(num) else ZERO
        for j in range(1, min(n, dl - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc * d0inv)
    return out


class PowerSeries:
    """Truncated power series known exactly through x^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Q(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def _raw(cls, coeffs: list, order: int) -> PowerSeries:
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.order = order
        return s

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"PowerSeries({[rational_to_str(c) for c in self.coeffs]}, order={self.order})"

    def to_list(self) -> list:
        return list(self.coeffs)

    def truncate(self, N: int) -> PowerSeries:
        if N > self.order:
            raise ValueError("cannot raise the precision of a truncated series")
        return PowerSeries._raw(list(self.coeffs[: N + 1]), N)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroInput("series is zero to its known precision")

    def __neg__(self):
        return PowerSeries._raw([-c for c in self.coeffs], self.order)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            cs = list(self.coeffs)
            cs[0] += Q(other)
            return PowerSeries._raw(cs, self.order)
        N = min(self.order, other.order)
        return PowerSeries._raw([self.coeffs[i] + other.coeffs[i] for i in range(N + 1)], N)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            s = Q(other)
            return PowerSeries._raw([c * s for c in self.coeffs], self.order)
        N = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (N + 1)
        for i in range(N + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(N + 1 - i):
                out[i + j] += ai * b[j]
        return PowerSeries._raw(out, N)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = PowerSeries([1], self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> PowerSeries:
        """Multiply by x^k, keeping the truncation order."""
        if k < 0:
            raise ValueError("negative shift")
        cs = ([ZERO] * k + list(self.coeffs))[: self.order + 1]
        return PowerSeries._raw(cs, self.order)

    def reciprocal(self) -> PowerSeries:
        return series_reciprocal(self)


def series_expand(rf: RationalFunction, N: int) -> PowerSeries:
    if N < 0:
        raise ValueError("N must be nonnegative")
    if not rf.den[0]:
        raise PoleAtZero("denominator vanishes at 0")
    return PowerSeries._raw(_series_quotient(rf.num.coeffs, rf.den.coeffs, N), N)


def series_order(rf: RationalFunction) -> int:
    if not rf:
        raise ZeroInput("series order of zero")
    if not rf.den[0]:
        raise PoleAtZero("denominator vanishes at 0")
    return rf.num.order()


def series_reciprocal(s: PowerSeries) -> PowerSeries:
    if not s.coeffs[0]:
        raise NonUnitConstantTerm("constant term is zero")
    return PowerSeries._raw(_series_quotient([ONE], s.coeffs, s.order), s.order)


def series_truncation_poly(rf: RationalFunction, degree: int) -> Poly:
    """Taylor polynomial of rf of the given degree."""
    return Poly._raw(_series_quotient(rf.num.coeffs, rf.den.coeffs, degree))


def nullspace(rows: Sequence[Sequence]) -> list[list[Rational]]:
    """Basis of {v : M v = 0} over Q by exact Gauss-Jordan elimination."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[Q(c) for c in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
