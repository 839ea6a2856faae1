"""Periodic continued fractions of quadratic irrationals.

A quadratic irrational (s + sqrt(d))/t is expanded with the classical
integer recurrence

    a_n = floor((s_n + sqrt(d)) / t_n)
    s_{n+1} = a_n * t_n - s_n
    t_{n+1} = (d - s_{n+1}^2) / t_n

which stays in exact integers as long as t | d - s^2.  The expansion is
periodic; the period is detected from the first repeated (s_n, t_n) pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import is_perfect_square, isqrt


def floor_quadirr(s: int, d: int, t: int) -> int:
    """Exact floor((s + sqrt(d)) / t) for non-square d >= 0, t != 0."""
    f = isqrt(d)
    if t > 0:
        return (s + f) // t
    # (s + sqrt(d)) / t = -(s + sqrt(d)) / |t|; the argument is irrational
    return -((s + f) // (-t)) - 1


@dataclass(frozen=True)
class QuadIrr:
    """The quadratic irrational (s + sqrt(d)) / t, normalized so t | d - s^2."""

    d: int
    s: int
    t: int

    def __post_init__(self):
        if self.t == 0:
            raise ValueError("t must be nonzero")
        if self.d < 0:
            raise ValueError("d must be non-negative")
        if is_perfect_square(self.d) is not None:
            raise ValueError(f"d={self.d} is a perfect square")
        if (self.d - self.s * self.s) % self.t != 0:
            a = abs(self.t)
            object.__setattr__(self, "s", self.s * a)
            object.__setattr__(self, "d", self.d * self.t * self.t)
            object.__setattr__(self, "t", self.t * a)

    def compare_rational(self, num: int, den: int) -> int:
        """Sign of self - num/den, exactly."""
        if den == 0:
            raise ValueError("zero denominator")
        # self - num/den = (A + B*sqrt(d)) / (t*den), A = s*den - num*t, B = den
        a = self.s * den - num * self.t
        b = den
        q = self.t * den
        return _sign_a_plus_b_sqrt(a, b, self.d) * (1 if q > 0 else -1)


def _sign_a_plus_b_sqrt(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) with d non-square (so never zero unless a=b=0)."""
    if b == 0:
        return (a > 0) - (a < 0)
    if b > 0:
        if a >= 0:
            return 1
        lhs, rhs = b * b * d, a * a
        return (lhs > rhs) - (lhs < rhs)
    return -_sign_a_plus_b_sqrt(-a, -b, d)


@dataclass
class CFExpansion:
    """Preperiod + period of quotients with the (s_n, t_n) side sequences."""

    alpha: QuadIrr
    quotients: list[int]          # a_0 .. a_{j+L-1}
    preperiod_len: int            # j
    period_len: int               # L
    aux: list[tuple[int, int]]    # (s_n, t_n) for n = 0 .. j+L

    def quotient(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        k = self.preperiod_len + self.period_len
        if n < k:
            return self.quotients[n]
        return self.quotients[self.preperiod_len + (n - self.preperiod_len) % self.period_len]

    def aux_at(self, n: int) -> tuple[int, int]:
        """(s_n, t_n), unrolling the period as needed."""
        if n < 0:
            raise IndexError(n)
        k = self.preperiod_len + self.period_len
        if n <= k:
            return self.aux[n]
        return self.aux[self.preperiod_len + (n - self.preperiod_len) % self.period_len]


class ExpansionCapExceeded(RuntimeError):
    pass


def expand(alpha: QuadIrr, max_terms: int = 100_000) -> CFExpansion:
    """Continued fraction of alpha, with period detected from (s_n, t_n)."""
    d = alpha.d
    s, t = alpha.s, alpha.t
    seen: dict[tuple[int, int], int] = {}
    quots: list[int] = []
    aux: list[tuple[int, int]] = [(s, t)]
    for n in range(max_terms):
        key = (s, t)
        if key in seen:
            j = seen[key]
            return CFExpansion(alpha, quots, j, n - j, aux)
        seen[key] = n
        a = floor_quadirr(s, d, t)
        quots.append(a)
        s = a * t - s
        if (d - s * s) % t != 0:
            raise ArithmeticError("recurrence left exact integers; input not normalized")
        t = (d - s * s) // t
        aux.append((s, t))
    raise ExpansionCapExceeded(f"no period within {max_terms} terms")


@dataclass
class ConvergentSeq:
    """Convergents (p_m, q_m) for m = -1 .. upto, with (p_-1, q_-1) = (1, 0)."""

    pairs: list[tuple[int, int]] = field(default_factory=list)

    def pair(self, m: int) -> tuple[int, int]:
        if m < -1:
            raise IndexError(m)
        return self.pairs[m + 1]


def convergents(exp: CFExpansion, upto: int) -> ConvergentSeq:
    """Exact convergents through index `upto`, unrolling the period."""
    if upto < 0:
        raise ValueError("upto must be >= 0")
    pairs = [(1, 0)]
    p_prev, q_prev = 1, 0
    p_prev2, q_prev2 = 0, 1
    for m in range(upto + 1):
        a = exp.quotient(m)
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        pairs.append((p, q))
        p_prev2, q_prev2 = p_prev, q_prev
        p_prev, q_prev = p, q
    return ConvergentSeq(pairs)


def _product_expansion(alpha: int, beta: int) -> CFExpansion:
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha, beta must be positive")
    if is_perfect_square(alpha * beta) is not None:
        raise ValueError("alpha*beta must not be a perfect square")
    return expand(QuadIrr(alpha * beta, 0, beta))


def lemma_db_value(alpha: int, beta: int, n: int, r: int, u: int) -> int:
    """(-1)^n * (u^2 t_{n+1} + 2 r u s_{n+2} - r^2 t_{n+2}).

    The side sequences come from the expansion of sqrt(alpha*beta)/beta.
    """
    exp = _product_expansion(alpha, beta)
    t1 = exp.aux_at(n + 1)[1]
    s2, t2 = exp.aux_at(n + 2)
    return (-1) ** n * (u * u * t1 + 2 * r * u * s2 - r * r * t2)


def lemma_db_check(alpha: int, beta: int, n: int, r: int, u: int) -> int:
    """Recompute the identity's left side from convergents and assert equality.

    Left side: alpha*(r q_{n+1} + u q_n)^2 - beta*(r p_{n+1} + u p_n)^2,
    with p_m/q_m the convergents of sqrt(alpha/beta).
    """
    exp = _product_expansion(alpha, beta)
    conv = convergents(exp, n + 1)
    pn, qn = conv.pair(n)
    pn1, qn1 = conv.pair(n + 1)
    lhs = alpha * (r * qn1 + u * qn) ** 2 - beta * (r * pn1 + u * pn) ** 2
    rhs = lemma_db_value(alpha, beta, n, r, u)
    if lhs != rhs:
        raise AssertionError(f"identity violated: lhs={lhs} rhs={rhs}")
    return rhs


@dataclass(frozen=True)
class WorleyCandidate:
    m: int
    r: int
    u: int
    sign: int       # +1 or -1
    a: int          # r*p_{m+1} + sign*u*p_m
    b: int          # r*q_{m+1} + sign*u*q_m


def worley_candidates(alpha: QuadIrr, c, m_max: int) -> list[WorleyCandidate]:
    """All (m, r, u, sign) with m <= m_max, r,u >= 0 and r*u < 2c.

    c is exact (int or Fraction).  Candidates where r or u is zero are
    capped at the largest integer below 2c (their scalings are redundant
    multiples of convergents); gcd filtering is left to the caller.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    twice = 2 * c
    # largest integer strictly below 2c
    lt = (twice.numerator - 1) // twice.denominator
    cap = max(lt, 1)
    exp = expand(alpha)
    conv = convergents(exp, m_max + 1)
    out: list[WorleyCandidate] = []
    for m in range(-1, m_max + 1):
        pm, qm = conv.pair(m)
        pm1, qm1 = conv.pair(m + 1)
        for r in range(cap + 1):
            for u in range(cap + 1):
                if r == 0 and u == 0:
                    continue
                if Fraction(r * u) >= twice:
                    continue
                signs = (1,) if u == 0 else (1, -1)
                for sg in signs:
                    out.append(WorleyCandidate(
                        m, r, u, sg,
                        r * pm1 + sg * u * pm,
                        r * qm1 + sg * u * qm,
                    ))
    return out
