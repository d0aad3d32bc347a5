"""Exact integer combinatorics for generalized Johnson graphs G(n, r, s).

G(n, r, s) has one vertex per r-subset of {1..n}; two vertices are adjacent
when their intersection has exactly s elements.  Everything here is a pure
function of (n, r, s) and small indices: vertex count N, degree N1, the
common-neighbor transition counts A(i, j), their leading large-n terms, and
the percolation probability scale at which t-cycles appear.

All counts are arbitrary-precision integers; probabilities are doubles with
natural-log companions because quantities like c_t * p**t leave the range of
fixed-width arithmetic even at modest t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError

__all__ = [
    "binom",
    "GraphParams",
    "MRange",
    "LeadingTerm",
    "Threshold",
    "vertex_count",
    "degree",
    "a_ij",
    "m_range",
    "a_ij_nonzero",
    "a_ij_leading",
    "threshold_p",
]


def binom(a: int, b: int) -> int:
    """Binomial coefficient C(a, b), totalized: 0 whenever not 0 <= b <= a.

    In particular C(0, 0) = 1 and any negative argument gives 0.  This is the
    extension under which the A(i, j) sum below needs no case analysis: terms
    with an impossible element allocation vanish on their own.
    """
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class GraphParams:
    """The triple (n, r, s) defining G(n, r, s).

    Requires 0 <= s < r < n and at least one edge endpoint per vertex
    (n >= 2r - s, equivalently degree >= 1).  Degenerate edgeless parameter
    triples are rejected so every downstream routine may assume N1 >= 1.
    """

    n: int
    r: int
    s: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.r, int) and isinstance(self.s, int)):
            raise ParameterError(f"n, r, s must be integers, got {(self.n, self.r, self.s)}")
        if not 0 <= self.s < self.r < self.n:
            raise ParameterError(
                f"need 0 <= s < r < n, got n={self.n}, r={self.r}, s={self.s}"
            )
        if self.degree < 1:
            raise ParameterError(
                f"G({self.n},{self.r},{self.s}) has no edges (need n >= 2r - s)"
            )

    @property
    def vertex_count(self) -> int:
        """N = C(n, r), the number of r-subsets of {1..n}."""
        return math.comb(self.n, self.r)

    @property
    def degree(self) -> int:
        """N1 = C(r, s) * C(n - r, r - s); the graph is N1-regular."""
        return binom(self.r, self.s) * binom(self.n - self.r, self.r - self.s)

    @property
    def edge_count(self) -> int:
        return self.vertex_count * self.degree // 2

    def __str__(self) -> str:
        return f"G({self.n},{self.r},{self.s})"


def vertex_count(params: GraphParams) -> int:
    return params.vertex_count


def degree(params: GraphParams) -> int:
    return params.degree


@dataclass(frozen=True)
class MRange:
    """Range of summation indices m contributing nonzero terms to A(i, j).

    ``m_min``/``m_max`` are the exact bounds at the given n; every m inside
    contributes a strictly positive term and every m outside contributes zero.
    ``m_max_large_n`` = min{s, i, j} is the bound once n is large enough that
    the ground set stops being the binding constraint.
    """

    m_min: int
    m_max: int
    m_max_large_n: int

    @property
    def empty(self) -> bool:
        return self.m_min > self.m_max


def _check_ij(params: GraphParams, i: int, j: int) -> None:
    if not (0 <= i <= params.r and 0 <= j <= params.r):
        raise ParameterError(f"i, j must lie in [0, r={params.r}], got i={i}, j={j}")


def m_range(params: GraphParams, i: int, j: int) -> MRange:
    """Exact nonzero-term range for the A(i, j) sum at this n."""
    _check_ij(params, i, j)
    n, r, s = params.n, params.r, params.s
    m_min = max(0, max(i, j) - (r - s), i + j - r)
    m_max = min(s, i, j, n - 2 * r + i + j - (r - s))
    return MRange(m_min=m_min, m_max=m_max, m_max_large_n=min(s, i, j))


def a_ij(params: GraphParams, i: int, j: int) -> int:
    """Common count A(i, j): neighbors of x lying at distance-class j from y.

    Fix any vertex y and any x with |x intersect y| = i.  A(i, j) is the
    number of vertices z with |z intersect x| = s and |z intersect y| = j;
    by symmetry it does not depend on the choice of x and y.  Summing over
    m = |z intersect x intersect y|:

        A(i, j) = sum_m C(i, m) C(r-i, s-m) C(r-i, j-m) C(n-2r+i, r-s-j+m)

    which is exact for every n.  If no x realizes intersection i at this n
    (i.e. n < 2r - i), every term vanishes and the sum is 0.
    """
    _check_ij(params, i, j)
    n, r, s = params.n, params.r, params.s
    total = 0
    for m in range(0, s + 1):
        total += (
            binom(i, m)
            * binom(r - i, s - m)
            * binom(r - i, j - m)
            * binom(n - 2 * r + i, r - s - j + m)
        )
    return total


def a_ij_nonzero(r: int, s: int, i: int, j: int) -> bool:
    """Whether A(i, j) > 0 once n is sufficiently large.

    Equivalent to |i - j| <= r - s and i + j <= r + s.  At small n the ground
    set can force extra zeros; callers comparing against ``a_ij`` at a
    specific n must use ``m_range(...).empty`` instead.
    """
    if not 0 <= s < r:
        raise ParameterError(f"need 0 <= s < r, got r={r}, s={s}")
    if not (0 <= i <= r and 0 <= j <= r):
        raise ParameterError(f"i, j must lie in [0, r={r}], got i={i}, j={j}")
    return abs(i - j) <= r - s and i + j <= r + s


@dataclass(frozen=True)
class LeadingTerm:
    """Leading large-n term of A(i, j): A(i, j) ~ coefficient * n**exponent.

    The coefficient is kept as an exact rational so ratio tests have an exact
    reference point.
    """

    coefficient: Fraction
    exponent: int

    def evaluate(self, n: int) -> float:
        return float(self.coefficient) * float(n) ** self.exponent


def a_ij_leading(r: int, s: int, i: int, j: int) -> LeadingTerm:
    """Leading term of A(i, j) as n grows with (r, s, i, j) fixed.

    The m = min{s, i, j} summand dominates: its ground-set factor
    C(n - 2r + i, r - s - j + m) is a degree-(r - s - j + m) polynomial in n,
    the highest degree over the range.  Only defined on the nonzero class.
    """
    if not a_ij_nonzero(r, s, i, j):
        raise ParameterError(
            f"A({i},{j}) is zero for large n at r={r}, s={s}; no leading term"
        )
    m = min(s, i, j)
    exponent = r - s - j + m
    coefficient = Fraction(
        binom(i, m) * binom(r - i, s - m) * binom(r - i, j - m),
        math.factorial(exponent),
    )
    return LeadingTerm(coefficient=coefficient, exponent=exponent)


@dataclass(frozen=True)
class Threshold:
    """A probability scale together with its natural log and the form used."""

    value: float
    log_value: float
    form: str


THRESHOLD_FORMS = ("exact-degree", "fixed-t-asymptotic")


def threshold_p(params: GraphParams, t: int, form: str = "exact-degree") -> Threshold:
    """Edge-retention scale at which t-cycles start to appear in G_p(n, r, s).

    exact-degree form:        n**(-s/t) / N1
    fixed-t-asymptotic form:  n**(-(r-s) - s/t)

    The degree form is the sharper normalization (N1 carries the exact
    constant); the asymptotic form replaces N1 by its growth order n**(r-s)
    and is the classical fixed-t answer.  Computed in log space.
    """
    if t < 3:
        raise ParameterError(f"cycle length t must be >= 3, got {t}")
    if form not in THRESHOLD_FORMS:
        raise ParameterError(f"unknown threshold form {form!r}; expected one of {THRESHOLD_FORMS}")
    n, r, s = params.n, params.r, params.s
    if form == "exact-degree":
        log_value = -(s / t) * math.log(n) - math.log(params.degree)
    else:
        log_value = (-(r - s) - s / t) * math.log(n)
    return Threshold(value=math.exp(log_value), log_value=log_value, form=form)
