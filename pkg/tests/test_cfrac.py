import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankelcf.algebra import Poly, Q, RationalFunction
from hankelcf.cfrac import (
    Chain,
    QuadraticFE,
    Scale,
    Shift,
    arrows,
    build_chain,
    canonicalize,
    decompose_u,
    detect_period,
    hankel_from_chain,
    hankel_sequence,
    hankel_values,
    shift_sign,
    tau,
)
from hankelcf.errors import ChainTooShort, NoPeriodFound, NotCanonicalizable
from hankelcf.genfunc import GFKind, build_fe_F, build_fe_G, series_from_fe
from hankelcf.oracle import hankel_det, hankel_naive

x = Poly([0, 1])


def P(*c):
    return RationalFunction(Poly(list(c)))


def kinds(rmax):
    return [GFKind(f, r) for f in "FG" for r in range(1, rmax + 1)]


def test_shift_sign():
    assert [shift_sign(d) for d in range(6)] == [1, -1, -1, 1, 1, -1]
    with pytest.raises(ValueError):
        Shift(1, 1)
    with pytest.raises(ValueError):
        Scale(Q(1))


def test_canonicalize_catalan():
    fe = canonicalize(x, -1, 1)
    assert (fe.d, fe.k, fe.u, fe.v) == (0, 1, P(1), P(-1))


def test_canonicalize_examples():
    fe = canonicalize(Poly([0, 0, 0, 1]), Poly([-1, 3]), 1)
    assert (fe.d, fe.k, fe.u, fe.v) == (0, 3, P(1, -3), P(-1))
    with pytest.raises(NotCanonicalizable):
        canonicalize(Poly([0, 0, 1]), 0, Poly([0, 0, 0, 0, 0, -1]))


def test_canonical_form_invariants():
    with pytest.raises(NotCanonicalizable):
        QuadraticFE(0, 0, P(1), P(1))
    with pytest.raises(NotCanonicalizable):
        QuadraticFE(0, 1, P(0, 1), P(1))


def test_decompose_u():
    fe = QuadraticFE(1, 1, P(-5, 25, -25, 2), P(1))
    uL, uH = decompose_u(fe)
    assert uL == Poly([-5, 25, -25])
    assert uH == P(2)
    assert RationalFunction(uL) + RationalFunction(x**3) * uH == fe.u


def test_f5_first_steps():
    chain = build_chain(build_fe_F(5), 3)
    steps = [s for s, _ in chain.steps]
    assert steps == [Shift(0, 1), Scale(Q("-1/5")), Shift(0, 1)]
    fe1 = chain.steps[0][1]
    den = Poly([-5, 25, 0, 1])
    assert (fe1.d, fe1.k) == (0, 2)
    assert fe1.u == RationalFunction(Poly([1, -5, -5]), den)
    assert fe1.v == RationalFunction(Poly([-1]), den)


def test_g2_is_purely_periodic():
    chain = build_chain(build_fe_G(2), 8)
    steps = [s for s, _ in chain.steps]
    assert steps[:4] == [Shift(0, 1), Scale(Q(-1)), Shift(0, 1), Scale(Q(-1))]
    assert chain.steps[3][1] == chain.initial


@pytest.mark.parametrize("kind", kinds(12), ids=str)
def test_chain_matches_oracle(kind):
    N = 40 if kind.r <= 8 else 24
    values = hankel_values(kind.fe(), N)
    seq = kind.coeffs(2 * N)
    for n in range(N + 1):
        assert values[n] == hankel_det(seq, n), n


def test_hankel_from_chain_agrees_with_sequence():
    chain = Chain(build_fe_F(7)).extended_to_drop(60)
    seq = hankel_sequence(chain, 60)
    assert [hankel_from_chain(chain, n) for n in range(61)] == seq


def test_chain_too_short():
    chain = build_chain(build_fe_F(3), 2)
    with pytest.raises(ChainTooShort) as err:
        hankel_sequence(chain, 50)
    assert err.value.largest_resolvable < 50
    assert len(hankel_sequence(chain, 50, grow=True)) == 51


def test_f3_known_values():
    assert hankel_values(build_fe_F(3), 8) == [1, 1, 0, -1, -1, 0, 1, 1, 0]


# arrow period and index drop per period
PERIODS = {
    ("F", 3): (2, 3), ("F", 5): (4, 5), ("F", 7): (6, 7), ("F", 9): (8, 9), ("F", 11): (10, 11),
    ("F", 4): (2, 2), ("F", 6): (3, 3), ("F", 8): (4, 4), ("F", 10): (5, 5), ("F", 12): (6, 6),
}
PERIODS.update({("G", r): (r, r) for r in range(2, 10)})


@pytest.mark.parametrize("key", sorted(PERIODS), ids=lambda k: f"{k[0]}{k[1]}")
def test_detect_period(key):
    family, r = key
    chain = build_chain(GFKind(family, r).fe(), 12 * r + 40)
    rep = detect_period(chain)
    assert (rep.order, rep.index_drop_per_period) == PERIODS[key]


def test_period_report_json():
    rep = detect_period(build_chain(build_fe_F(9), 40))
    data = rep.to_json()
    assert data["order"] == 8 and data["index_drop_per_period"] == 9
    assert len(data["d_pattern"]) == 8


def test_no_period_on_short_chain():
    with pytest.raises(NoPeriodFound):
        detect_period(build_chain(build_fe_F(11), 3))


def test_arrows_pair_scale_and_shift():
    chain = build_chain(build_fe_F(5), 20)
    arr = arrows(chain)
    assert sum(1 for s, _ in chain.steps if isinstance(s, Shift)) == len(arr)
    assert arr[0].scale is None and arr[1].scale == Q("-1/5")


def test_chain_json_round_trip():
    chain = build_chain(build_fe_F(6), 20)
    data = json.loads(chain.dumps())
    assert Chain.from_json(data) == chain
    lean = json.loads(chain.dumps(include_fes=False))
    assert Chain.from_json(lean) == chain


def test_chain_is_deterministic():
    a = build_chain(build_fe_G(5), 30).dumps()
    b = build_chain(build_fe_G(5), 30).dumps()
    assert a == b


def _series(fe, N):
    return list(series_from_fe(fe, N).coeffs)


@pytest.mark.parametrize("kind", kinds(9), ids=str)
def test_step_contract(kind):
    """Each step relates H_n before and after exactly as recorded, n <= 12."""
    N = 12
    chain = build_chain(kind.fe(), 40)
    prev = _series(chain.initial, 2 * N)
    for step, fe in chain.steps:
        cur = _series(fe, 2 * N)
        for n in range(N + 1):
            lhs = hankel_det(prev, n)
            if isinstance(step, Scale):
                assert lhs == step.u0 ** (-n) * hankel_det(cur, n)
            elif n == 0:
                assert lhs == 1
            elif n <= step.d:
                assert lhs == 0
            else:
                assert lhs == step.sign * hankel_det(cur, n - step.d - 1)
        prev = cur


@pytest.mark.parametrize("kind", kinds(9), ids=str)
def test_zero_rule_on_chain(kind):
    chain = build_chain(kind.fe(), 40)
    for fe in chain.fes():
        if fe.d:
            s = _series(fe, 2 * fe.d)
            assert all(hankel_det(s, m) == 0 for m in range(1, fe.d + 1))


@given(st.integers(1, 30), st.integers(0, 30))
def test_hankel_from_chain_modular_agreement(r, n):
    kind = GFKind("F", r)
    chain = Chain(kind.fe()).extended_to_drop(n)
    h = hankel_from_chain(chain, n)
    p = 274177
    assert int(h.numerator) * pow(int(h.denominator), p - 2, p) % p == hankel_naive(kind, n, "modp", p)


def test_tau_on_catalan_reaches_fixed_point():
    step, nxt = tau(build_fe_F(1))
    assert step == Shift(0, 1)
    assert (nxt.k, nxt.u, nxt.v) == (2, P(1, -2), P(-1))
    assert tau(nxt) == (Shift(0, 1), nxt)
