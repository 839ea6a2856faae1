"""Arithmetic in Z[sqrt(-t)], D(n)-tuple verification and quadruple families.

Ring elements are a + b*sqrt(-t) with integer a, b and a fixed positive t
per ring; t = 0 embeds plain integers.  Square detection, the triple
extension identities and the {1, n^2+1, -c, d} quadruple family are all
done in exact integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import divisors, is_perfect_square, is_prime, isqrt
from .pellian import (
    PellianProblem,
    PellianOutcome,
    UNSOLVABLE,
    all_solutions_stream,
    decide_paper_equation,
)

EXISTS_INFINITE = "EXISTS_INFINITE"
NONE = "NONE"
UNDECIDED_BY_PAPER = "UNDECIDED_BY_PAPER"


@dataclass(frozen=True)
class RingElem:
    """re + im*sqrt(-t); t = 0 means a plain integer (im must be 0)."""

    re: int
    im: int
    t: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if self.t == 0 and self.im != 0:
            raise ValueError("t=0 embeds plain integers only")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{self.im:+}*sqrt(-{self.t})"


def as_elem(v, t: int) -> RingElem:
    if isinstance(v, RingElem):
        if v.im != 0 and v.t != t:
            raise ValueError(f"mixed rings: t={v.t} vs t={t}")
        return RingElem(v.re, v.im, t)
    return RingElem(int(v), 0, t)


def ring_mul(a: RingElem, b: RingElem) -> RingElem:
    if a.t != b.t:
        raise ValueError(f"mixed rings: t={a.t} vs t={b.t}")
    t = a.t
    return RingElem(a.re * b.re - t * a.im * b.im, a.re * b.im + a.im * b.re, t)


def ring_add_int(a: RingElem, n: int) -> RingElem:
    return RingElem(a.re + n, a.im, a.t)


def _canonical(x: int, y: int, t: int) -> RingElem:
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return RingElem(x, y, t)


def sqrt_in_ring(z: RingElem) -> list[RingElem]:
    """All w with w^2 = z, canonicalized (re > 0, or re = 0 and im >= 0).

    Solves re = x^2 - t*y^2, im = 2*x*y by enumerating divisors of im/2;
    for im = 0 the two degenerate branches (y = 0, x = 0) are solved
    directly.  Empty list means z is not a square in the ring.
    """
    t = z.t
    if t == 0:
        r = is_perfect_square(z.re)
        return [RingElem(r, 0, 0)] if r is not None else []
    roots: set[RingElem] = set()
    if z.im == 0:
        if z.re == 0:
            return [RingElem(0, 0, t)]
        if z.re > 0:
            r = is_perfect_square(z.re)
            if r is not None:
                roots.add(_canonical(r, 0, t))
        else:
            q, rem = divmod(-z.re, t)
            if rem == 0:
                r = is_perfect_square(q)
                if r is not None:
                    roots.add(_canonical(0, r, t))
    else:
        half, rem = divmod(z.im, 2)
        if rem != 0:
            return []
        for dv in divisors(half):
            for x in (dv, -dv):
                y = half // x
                if x * x - t * y * y == z.re:
                    roots.add(_canonical(x, y, t))
    return sorted(roots, key=lambda w: (w.re, w.im))


@dataclass
class TupleReport:
    """Verification record for a D(n)-tuple candidate."""

    elements: tuple[RingElem, ...]
    n: int
    t: int
    verified: bool
    witnesses: dict[tuple[int, int], RingElem] = field(default_factory=dict)
    failing_pair: tuple[int, int] | None = None
    degenerate: bool = False
    note: str = ""


def check_tuple(elements, n: int, t: int = 0) -> TupleReport:
    """Verify that every pairwise product plus n is a square in Z[sqrt(-t)].

    Elements may be ints or RingElems sharing the ring's t.  Zero or
    duplicate elements are rejected.
    """
    elems = tuple(as_elem(e, t) for e in elements)
    if any(e.is_zero() for e in elems):
        raise ValueError("tuple elements must be nonzero")
    if len(set(elems)) != len(elems):
        raise ValueError("tuple elements must be pairwise distinct")
    witnesses: dict[tuple[int, int], RingElem] = {}
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            val = ring_add_int(ring_mul(elems[i], elems[j]), n)
            roots = sqrt_in_ring(val)
            if not roots:
                return TupleReport(elems, n, t, False, witnesses, (i, j))
            witnesses[(i, j)] = roots[0]
    return TupleReport(elems, n, t, True, witnesses)


@dataclass(frozen=True)
class ExtensionData:
    """Integers (e, x, y, z) attached to a D(l) triple by the extension identity."""

    e: int
    x: int
    y: int
    z: int


def lemma3_extend_data(a: int, b: int, c: int, l: int,
                       r: int, s: int, tp: int) -> ExtensionData:
    """Extension data of a D(l) triple (a, b, c) with pair roots (r, s, tp).

    Checks ab+l = r^2, ac+l = s^2, bc+l = tp^2 first, then asserts
    a*e+l^2, b*e+l^2, c*e+l^2 are the squares of x, y, z and that the
    closed-form identity for c holds in exact rationals.
    """
    if a * b + l != r * r or a * c + l != s * s or b * c + l != tp * tp:
        raise ValueError("pair roots do not match the D(l) triple")
    e = l * (a + b + c) + 2 * a * b * c - 2 * r * s * tp
    x = a * tp - r * s
    y = b * s - r * tp
    z = c * r - s * tp
    if a * e + l * l != x * x or b * e + l * l != y * y or c * e + l * l != z * z:
        raise AssertionError("square identities violated")
    rhs = Fraction(a + b) + Fraction(e, l) + Fraction(2, l * l) * (a * b * e + r * x * y)
    if Fraction(c) != rhs:
        raise AssertionError("closed-form identity for c violated")
    return ExtensionData(e, x, y, z)


def _pell_xy(n: int, j: int) -> tuple[int, int]:
    """j-th positive solution (x_j, y_j) of y^2 - (n^2+1)x^2 = -1."""
    sols = all_solutions_stream(PellianProblem(n * n + 1, -1), j)
    yj, xj = sols[j - 1]
    return xj, yj


def prop_family(n: int, j: int, m: int) -> tuple[TupleReport, TupleReport]:
    """Quadruples {1, n^2+1, -c_j, d+-} with the property D(-1) in Z[sqrt(-n^2)].

    m must divide n (Z[n*i] sits inside Z[m*i], so a verified report also
    holds with t = m^2).  Degenerate branches (d collides with another
    element or vanishes) are flagged, not verified.
    """
    if n < 1 or j < 1 or m < 1 or n % m != 0:
        raise ValueError("need positive n, j and m | n")
    b = n * n + 1
    t = n * n
    xj, yj = _pell_xy(n, j)
    c = n * n * xj * xj - 1
    reports = []
    for sg in (1, -1):
        d = sg * 2 * n**3 * xj * yj + (2 * n * n + 1) * c + n * n + 2
        elems = (1, b, -c, d)
        if 0 in elems or len({*elems}) != 4:
            rep = TupleReport(
                tuple(as_elem(e, t) for e in elems), -1, t, False,
                degenerate=True, note=f"d{'+' if sg > 0 else '-'}={d} degenerate",
            )
            reports.append(rep)
            continue
        # closed-form square witnesses
        w1 = n * n * xj + sg * n * yj
        w2 = n * (n * n + 1) * xj + sg * n * n * yj
        w3 = c + sg * n * xj * yj
        if d - 1 != w1 * w1 or b * d - 1 != w2 * w2 or -c * d - 1 != -t * w3 * w3:
            raise AssertionError("closed-form witnesses violated")
        rep = check_tuple(elems, -1, t)
        reports.append(rep)
    return reports[0], reports[1]


def find_admissible_pairs(search_limit: int) -> list[tuple[int, int, int, int]]:
    """All (p, k, q, l_exp) with 2*p^k = q^(2^l_exp) + 1, p odd prime <= limit,
    k in {1, 2, 4}, q an odd prime, l_exp >= 1."""
    out = []
    for p in range(3, search_limit + 1, 2):
        if not is_prime(p):
            continue
        for k in (1, 2, 4):
            v = 2 * p**k - 1
            e = 0
            while (r := is_perfect_square(v)) is not None:
                v = r
                e += 1
            if e >= 1 and v > 2 and is_prime(v):
                out.append((p, k, v, e))
    return sorted(out)


def remark2_reduction(b: int, t: int) -> PellianProblem:
    """The Pellian problem x^2 - b*y^2 = (1-b)/t gating negative c in {1, b, c}."""
    if t < 1:
        raise ValueError("t must be positive")
    if (b - 1) % t != 0:
        raise ValueError(f"t={t} does not divide b-1={b - 1}")
    return PellianProblem(b, (1 - b) // t)


@dataclass
class ClassifyResult:
    status: str
    witness: TupleReport | None = None
    certificate: PellianOutcome | None = None
    reason: str = ""


def theorem3_classify(p: int, k: int, q: int, l_exp: int, t: int) -> ClassifyResult:
    """Existence of D(-1)-quadruples {1, 2p^k, ...} in Z[sqrt(-t)].

    Even t: none exist.  t an even power of q up to q^(2^l_exp): infinitely
    many, with a constructive quadruple witness.  t an odd power of q below
    q^(2^l_exp): none, certified by the unsolvable Pellian reduction.
    Anything else is left undecided.
    """
    if t < 1:
        raise ValueError("t must be positive")
    b = 2 * p**k
    if not (is_prime(p) and p % 2 == 1 and is_prime(q) and q % 2 == 1):
        raise ValueError("p and q must be odd primes")
    if b != q ** (2**l_exp) + 1:
        raise ValueError(f"2*{p}^{k} != {q}^(2^{l_exp}) + 1")
    if t % 2 == 0:
        return ClassifyResult(NONE, reason="even t cannot divide b-1")
    e = 0
    v = t
    while v % q == 0:
        v //= q
        e += 1
    if v != 1:
        return ClassifyResult(UNDECIDED_BY_PAPER, reason=f"t={t} is not a power of {q}")
    top = 2**l_exp
    if e % 2 == 0 and e <= top:
        n = q ** (2 ** (l_exp - 1))
        m = q ** (e // 2)
        plus, _minus = prop_family(n, 1, m)
        if not plus.verified:  # pragma: no cover
            raise RuntimeError("constructive witness failed verification")
        return ClassifyResult(EXISTS_INFINITE, witness=plus,
                              reason=f"t={q}^{e} is an even power of q")
    if e % 2 == 1 and e <= top - 1:
        prob = remark2_reduction(b, t)
        s = top - e
        kk = 2 ** (l_exp - 1) - 1
        ll = (s - 1) // 2
        cert = decide_paper_equation(q, kk, ll)
        if -(q**s) != prob.n or cert.verdict != UNSOLVABLE:  # pragma: no cover
            raise RuntimeError("reduction mismatch")
        return ClassifyResult(NONE, certificate=cert,
                              reason=f"t={q}^{e} odd power; reduction unsolvable")
    return ClassifyResult(UNDECIDED_BY_PAPER, reason=f"t={t} outside the covered sets")


def integer_quadruple_search(b: int, c_max: int) -> list[tuple[int, int, int, int]]:
    """Exhaustive search for integer D(-1)-quadruples {1, b, c, d}, 1 < c < d <= c_max.

    Requires b-1 to be a perfect square, so {1, b} is a D(-1)-pair.
    Returns every quadruple found (expected none for the covered b forms).
    """
    if is_perfect_square(b - 1) is None:
        raise ValueError(f"b-1={b - 1} is not a perfect square")
    cands = []
    for x in range(1, isqrt(c_max - 1) + 1):
        c = x * x + 1
        if c == b or c > c_max:
            continue
        if is_perfect_square(b * c - 1) is not None:
            cands.append(c)
    out = []
    for i in range(len(cands)):
        for j in range(i + 1, len(cands)):
            c, d = cands[i], cands[j]
            if is_perfect_square(c * d - 1) is not None:
                out.append((1, b, c, d))
    return out
