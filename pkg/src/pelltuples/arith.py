"""Exact big-integer helpers shared by every other module.

Everything here is pure and works on Python ints only; no floating point
is used anywhere.
"""
from __future__ import annotations

import math

#: below this bound the Miller-Rabin witness set is provably exhaustive
DETERMINISTIC_PRIMALITY_BOUND = 1 << 64

_WITNESSES_BELOW_2_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# for n >= 2**64 we fall back to strong-probable-prime tests with the first
# forty primes as bases; callers can ask is_prime_certain() to find out
# whether the answer was deterministic
_WITNESSES_LARGE = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173,
)


def isqrt(n: int) -> int:
    """Exact floor square root of a non-negative integer."""
    if n < 0:
        raise ValueError("isqrt of negative integer")
    return math.isqrt(n)


def is_perfect_square(n: int) -> int | None:
    """Return the non-negative root when n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a % n, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic (Miller-Rabin with a known-exhaustive witness set) for
    n < 2**64; strong-probable-prime with forty fixed bases above that.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    witnesses = _WITNESSES_BELOW_2_64 if n < DETERMINISTIC_PRIMALITY_BOUND else _WITNESSES_LARGE
    return all(_strong_probable_prime(n, a) for a in witnesses)


def is_prime_certain(n: int) -> bool:
    """True when is_prime(n) is a deterministic answer rather than probabilistic."""
    return n < DETERMINISTIC_PRIMALITY_BOUND


def factorize(n: int, bound: int = 10**7) -> dict[int, int]:
    """Trial-division factorization; prime -> exponent.

    Raises ValueError when a composite cofactor survives trial division up
    to `bound` (we never need large factorizations).
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    f = 5
    while f * f <= m and f <= bound:
        for p in (f, f + 2):
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        f += 6
    if m > 1:
        if m <= bound * bound or is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            raise ValueError(f"cannot factor {n}: composite cofactor {m}")
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of |n| (n nonzero)."""
    if n == 0:
        raise ValueError("divisors of zero")
    divs = [1]
    for p, e in factorize(abs(n)).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def sqrt_compare(d: int, num: int, den: int) -> int:
    """Sign of sqrt(d) - num/den for d >= 0, den > 0. Exact."""
    if den <= 0:
        raise ValueError("den must be positive")
    if num <= 0:
        return 1 if d > 0 else (0 if num == 0 else 1)
    lhs = d * den * den
    rhs = num * num
    return (lhs > rhs) - (lhs < rhs)
