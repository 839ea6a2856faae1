"""Continued fractions of quadratic irrationals and convergent machinery."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pelltuples.arith import is_perfect_square, isqrt
from pelltuples.contfrac import (
    CFExpansion,
    ExpansionCapExceeded,
    QuadIrr,
    convergents,
    expand,
    floor_quadirr,
    lemma_db_check,
    lemma_db_value,
    worley_candidates,
)


def test_floor_quadirr_examples():
    assert floor_quadirr(0, 10, 1) == 3
    assert floor_quadirr(1, 5, 2) == 1
    assert floor_quadirr(0, 2, -1) == -2  # -sqrt(2) floors to -2
    assert floor_quadirr(-3, 10, 1) == 0
    assert floor_quadirr(3, 10, -2) == -4


@given(
    st.integers(min_value=-1000, max_value=1000),
    st.integers(min_value=2, max_value=10**6),
    st.integers(min_value=-1000, max_value=1000).filter(lambda t: t != 0),
)
def test_floor_quadirr_matches_fraction_bracket(s, d, t):
    f = floor_quadirr(s, d, t)
    # f <= (s + sqrt(d))/t < f + 1, checked by exact cross multiplication.
    # sign of (s + sqrt(d) - f*t) and (s + sqrt(d) - (f+1)*t) via squaring.
    for bound, want_nonneg in ((f, True), (f + 1, False)):
        # (s + sqrt(d))/t - bound has the sign of (c + sqrt(d)) * sign(t)
        # where c = s - bound*t.
        c = s - bound * t
        if c >= 0:
            cmp = 1  # c + sqrt(d) > 0 since d >= 2
        elif c * c < d:
            cmp = 1
        elif c * c > d:
            cmp = -1
        else:
            cmp = 0
        cmp *= 1 if t > 0 else -1
        if want_nonneg:
            assert cmp >= 0
        else:
            assert cmp < 0


def test_quadirr_rejects_square_d():
    with pytest.raises(ValueError):
        QuadIrr(9, 0, 1)
    with pytest.raises(ValueError):
        QuadIrr(10, 0, 0)


def test_quadirr_normalizes_divisibility():
    # t does not divide d - s^2: representation is rescaled, value preserved.
    alpha = QuadIrr(2, 0, 3)
    assert (alpha.d - alpha.s * alpha.s) % alpha.t == 0
    assert alpha.compare_rational(4714, 10000) == 1
    assert alpha.compare_rational(4715, 10000) == -1


def test_expand_sqrt10():
    e = expand(QuadIrr(10, 0, 1))
    assert e.quotients == [3, 6]
    assert e.preperiod_len == 1
    assert e.period_len == 1
    assert [e.quotient(n) for n in range(6)] == [3, 6, 6, 6, 6, 6]


def test_expand_sqrt2_and_golden():
    e = expand(QuadIrr(2, 0, 1))
    assert (e.quotients, e.preperiod_len, e.period_len) == ([1, 2], 1, 1)
    g = expand(QuadIrr(5, 1, 2))
    assert (g.quotients, g.preperiod_len, g.period_len) == ([1], 0, 1)


def test_expand_sqrt_one_more_than_square_power():
    # sqrt(p^(2k+2) + 1) = [p^(k+1); 2p^(k+1)] for a small slice of cases;
    # the full sweep lives in the acceptance suite.
    for p, k in ((3, 0), (3, 1), (5, 1), (7, 2)):
        a0 = p ** (k + 1)
        e = expand(QuadIrr(a0 * a0 + 1, 0, 1))
        assert e.quotients == [a0, 2 * a0]
        assert (e.preperiod_len, e.period_len) == (1, 1)


def test_expand_cap():
    with pytest.raises(ExpansionCapExceeded):
        expand(QuadIrr(1234567891, 0, 1), max_terms=3)


def _random_quadirr(rng):
    while True:
        d = rng.randrange(2, 5000)
        if is_perfect_square(d) is not None:
            continue
        s = rng.randrange(-100, 101)
        t = rng.randrange(-50, 51)
        if t == 0:
            continue
        return QuadIrr(d, s, t)


def test_expansion_state_invariants_random():
    rng = random.Random(7)
    for _ in range(1000):
        alpha = _random_quadirr(rng)
        e = expand(alpha)
        d = alpha.d
        for n, (s_n, t_n) in enumerate(e.aux):
            assert t_n != 0
            assert (d - s_n * s_n) % t_n == 0
            if n >= 1:
                a = e.quotient(n - 1)
                s_prev, t_prev = e.aux[n - 1]
                assert s_n == a * t_prev - s_prev
                assert t_n == (d - s_n * s_n) // t_prev
        # Inside the periodic part the state is reduced:
        # 0 < t_n and |s_n| < sqrt(d).
        for n in range(e.preperiod_len, e.preperiod_len + e.period_len):
            s_n, t_n = e.aux[n]
            assert 0 < t_n
            assert s_n * s_n < d
        # Partial quotients are positive beyond index 0.
        for n in range(1, len(e.quotients)):
            assert e.quotients[n] >= 1


def test_convergents_examples():
    c = convergents(expand(QuadIrr(10, 0, 1)), 3)
    assert c.pair(0) == (3, 1)
    assert c.pair(1) == (19, 6)
    assert c.pair(2) == (117, 37)
    c26 = convergents(expand(QuadIrr(26, 0, 1)), 1)
    assert c26.pair(0) == (5, 1)
    assert c26.pair(1) == (51, 10)


def test_convergents_determinant_and_quality():
    rng = random.Random(11)
    for _ in range(100):
        alpha = _random_quadirr(rng)
        e = expand(alpha)
        upto = e.preperiod_len + 2 * e.period_len + 3
        c = convergents(e, upto)
        prev = (1, 0)
        for m in range(upto + 1):
            p, q = c.pair(m)
            assert p * prev[1] - prev[0] * q in (1, -1)
            prev = (p, q)
        # |alpha - p_m/q_m| < 1/(q_m q_{m+1}), checked exactly:
        # q_{m+1} |q_m alpha - p_m| < 1.
        for m in range(upto):
            p, q = c.pair(m)
            p2, q2 = c.pair(m + 1)
            # alpha = (s + sqrt d)/t; q*alpha - p = (q*s - p*t + q*sqrt d)/t
            a = q * alpha.s - p * alpha.t
            b = q
            # |a + b sqrt d| * q2 < |t|  <=>  (a + b sqrt d)^2 q2^2 < t^2
            lhs_rat = (a * a + b * b * alpha.d) * q2 * q2 - alpha.t * alpha.t
            cross = 2 * a * b * q2 * q2
            # lhs_rat + cross*sqrt(d) < 0 must hold.
            if cross >= 0:
                assert lhs_rat < 0 and lhs_rat * lhs_rat > cross * cross * alpha.d
            else:
                assert lhs_rat < 0 or lhs_rat * lhs_rat < cross * cross * alpha.d


def test_lemma_db_examples():
    assert lemma_db_check(10, 1, 0, 1, 0) == -1
    assert lemma_db_check(10, 1, 0, 0, 1) == 1
    assert lemma_db_check(2, 1, 0, 1, 1) == 2


def test_lemma_db_randoms():
    rng = random.Random(3)
    for _ in range(300):
        while True:
            alpha = rng.randrange(1, 300)
            beta = rng.randrange(1, 300)
            if is_perfect_square(alpha * beta) is None:
                break
        n = rng.randrange(0, 12)
        r = rng.randrange(0, 30)
        u = rng.randrange(0, 30)
        # lemma_db_check raises AssertionError if the two sides disagree.
        lemma_db_check(alpha, beta, n, r, u)


def test_lemma_db_value_matches_check():
    assert lemma_db_value(10, 1, 0, 1, 0) == lemma_db_check(10, 1, 0, 1, 0)


def test_worley_example_sqrt10():
    cands = worley_candidates(QuadIrr(10, 0, 1), Fraction(3, 2), 0)
    hits = [(w.m, w.r, w.u, w.sign, w.a, w.b) for w in cands]
    assert (0, 1, 1, 1, 22, 7) in hits
    for w in cands:
        assert 0 <= w.r * w.u < 3  # ru < 2c = 3


def test_worley_covers_good_approximations():
    # Every a/b with |sqrt(10) - a/b| < c/b^2 and small b shows up as a
    # candidate (up to sign of the pair).
    alpha = QuadIrr(10, 0, 1)
    c = Fraction(3, 2)
    cands = worley_candidates(alpha, c, 8)
    pairs = {(w.a, w.b) for w in cands} | {(-w.a, -w.b) for w in cands}
    for b in range(1, 50):
        for a in range(3 * b - 2, 3 * b + 4):
            if math.gcd(a, b) != 1:
                continue
            # exact test |a - b sqrt10| < c/b  <=>  (a^2 - 10 b^2)^2 < ... ;
            # simpler: (b*sqrt10 - a)^2 * b^2 < c^2
            diff_sq = (a * a + 10 * b * b) * b * b
            cross = 2 * a * b * b * b
            # diff_sq - cross*sqrt(10) < c^2 ?
            rhs = Fraction(9, 4)
            lhs = diff_sq - rhs
            good = lhs < 0 or lhs * lhs < cross * cross * 10
            if good:
                assert (a, b) in pairs, (a, b)
