"""Euler-characteristic route for x^m = y^n via numerical semigroups.

Points of the punctual Hilbert schemes of the curve that are fixed by the
scaling torus correspond to co-finite ideals of the numerical semigroup
generated by m and n; nested pairs correspond to an ideal together with a
subset of its minimal generators removed.  Euler characteristics are
fixed-point counts, and the HOMFLY series is assembled as

    (a/q)^(mu-1) * sum_{l,j} q^(2l) (-a^2)^j #{nested pairs(l, j)}

with mu = (m-1)(n-1) the Milnor number.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .algebra import GradedPolynomial
from .daha import TorusKnot

HQ_VARS = ("a", "q")


class InputError(Exception):
    pass


class Semigroup:
    """The additive monoid generated by coprime m, n; gap set precomputed."""

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise InputError("generators must be positive")
        if gcd(m, n) != 1:
            raise InputError(f"gcd({m},{n}) != 1")
        self.m = m
        self.n = n
        self.milnor = (m - 1) * (n - 1)
        # Frobenius number mn - m - n; every integer above it is an element.
        self.frobenius = m * n - m - n
        self.gaps = tuple(
            x for x in range(1, self.frobenius + 1) if not self._member(x)
        )
        assert 2 * len(self.gaps) == self.milnor

    def _member(self, x: int) -> bool:
        if x < 0:
            return False
        for i in range(0, x // self.m + 1):
            if (x - i * self.m) % self.n == 0:
                return True
        return False

    def contains(self, x: int) -> bool:
        if x > self.frobenius:
            return True
        if x < 0:
            return False
        return x not in self._gapset

    @property
    def _gapset(self):
        if not hasattr(self, "_gapcache"):
            self._gapcache = frozenset(self.gaps)
        return self._gapcache

    def elements_upto(self, bound: int) -> list[int]:
        return [x for x in range(bound + 1) if self.contains(x)]

    def __repr__(self):
        return f"Semigroup<{self.m},{self.n}>"


def semigroup(m: int, n: int) -> Semigroup:
    return Semigroup(m, n)


class SemigroupIdeal:
    """A co-finite subset D of S with D + S contained in D.

    Stored as the frozen set of elements of S that are *missing* from D
    (the co-gaps); the colength is their count.
    """

    __slots__ = ("S", "removed")

    def __init__(self, S: Semigroup, removed=frozenset()):
        self.S = S
        self.removed = frozenset(removed)

    @property
    def colength(self) -> int:
        return len(self.removed)

    def contains(self, x: int) -> bool:
        return self.S.contains(x) and x not in self.removed

    def generators(self) -> list[int]:
        """Elements of the ideal not of the form (element) + (nonzero S-element)."""
        gens = []
        bound = max(self.removed, default=-1) + self.S.m + self.S.n + self.S.frobenius + 1
        for x in range(bound + 1):
            if not self.contains(x):
                continue
            reachable = False
            for s in self.S.elements_upto(x):
                if s == 0:
                    continue
                if self.contains(x - s):
                    reachable = True
                    break
            if reachable:
                continue
            gens.append(x)
        return gens

    def remove(self, x: int) -> "SemigroupIdeal":
        return SemigroupIdeal(self.S, self.removed | {x})

    def __eq__(self, other):
        return self.S is other.S and self.removed == other.removed

    def __hash__(self):
        return hash(self.removed)

    def __repr__(self):
        return f"Ideal(colength={self.colength}, removed={sorted(self.removed)})"


def ideals_of_colength(S: Semigroup, l: int) -> list[SemigroupIdeal]:
    """Exhaustive, duplicate-free list of colength-l ideals.

    Breadth-first: every colength-(k+1) ideal arises from a colength-k one
    by deleting a minimal generator, because adding back a maximal missing
    element (one not below another missing element) keeps the ideal
    property.
    """
    if l < 0:
        raise ValueError("colength must be >= 0")
    level = {SemigroupIdeal(S)}
    for _ in range(l):
        nxt = set()
        for ideal in level:
            for g in ideal.generators():
                nxt.add(ideal.remove(g))
        level = nxt
    return sorted(level, key=lambda d: sorted(d.removed))


@lru_cache(maxsize=None)
def _generator_count_profile(m: int, n: int, l: int) -> tuple:
    """Multiset of minimal-generator counts over all colength-l ideals."""
    S = semigroup(m, n)
    return tuple(len(d.generators()) for d in ideals_of_colength(S, l))


def nested_count(S: Semigroup, l: int, jump: int) -> int:
    """Number of nested pairs (D, D') with colengths l and l + jump.

    D' must contain D + (S minus 0) and sit inside D, so D' is determined
    by the subset of minimal generators of D it drops; the count is a sum
    of binomial coefficients.
    """
    if l < 0 or jump < 0:
        raise ValueError("l and jump must be >= 0")
    profile = _generator_count_profile(S.m, S.n, l)
    return sum(comb(g, jump) for g in profile)


def unknot_series(q_order: int) -> GradedPolynomial:
    """(a - 1/a)/(q - 1/q) expanded as a q-series to the given order."""
    terms = {}
    for k in range(0, q_order + 1, 2):
        # (a - a^-1) * (-q) * q^k expansion of 1/(q - q^-1) = -q/(1-q^2)
        terms[(-1, k + 1)] = Fraction(1)
        terms[(1, k + 1)] = Fraction(-1)
    p = GradedPolynomial(HQ_VARS)
    p.terms = {e: c for e, c in terms.items() if e[1] <= q_order}
    return p


def os_homfly(k: TorusKnot, q_order: int) -> GradedPolynomial:
    """Unreduced HOMFLY invariant of T(m,n) as a truncated (a,q)-series.

    Exact through q-degree `q_order`; higher terms are dropped.
    """
    m, n = min(k.m, k.n), max(k.m, k.n)
    if m == 1:
        base = unknot_series(q_order + n)  # plenty of slack before shifting
        mu = 0
    else:
        S = semigroup(m, n)
        mu = S.milnor
        base = GradedPolynomial(HQ_VARS)
        acc: dict = {}
        l = 0
        while 2 * l <= q_order - (mu - 1) + 2 * mu + 2:
            for d in ideals_of_colength(S, l):
                g = len(d.generators())
                for jump in range(g + 1):
                    key = (2 * jump, 2 * l)
                    acc[key] = acc.get(key, 0) + comb(g, jump) * (-1) ** jump
            l += 1
        base.terms = {e: Fraction(c) for e, c in acc.items() if c}
    shift = GradedPolynomial.monomial(HQ_VARS, (mu - 1, -(mu - 1)))
    out = shift * base
    return out.truncate_above("q", q_order)


def reduced_homfly(k: TorusKnot, q_order: int | None = None) -> GradedPolynomial:
    """os_homfly divided by the unknot series; must stabilize to a polynomial.

    The quotient is computed coefficient by coefficient in q inside a valid
    window below the truncation order (truncated division is only reliable
    there); the result is exact because the reduced invariant is a Laurent
    polynomial supported well inside the window, which is verified.
    """
    if q_order is None:
        q_order = 2 * k.milnor + 10
    margin = k.milnor + 2 * (k.m + k.n) + 4
    work = q_order + margin
    num = os_homfly(k, work)
    den = unknot_series(work)
    out = GradedPolynomial(HQ_VARS)
    num_left = num
    den_low_q = min(e[1] for e in den.terms)
    den_low = den.coefficient_of("q", den_low_q)  # Laurent polynomial in a
    while not num_left.is_zero():
        lo_q = min(e[1] for e in num_left.terms)
        if lo_q - den_low_q > q_order:
            break
        lead = num_left.coefficient_of("q", lo_q)
        piece = lead.exact_div(den_low) * GradedPolynomial.monomial(
            HQ_VARS, (0, lo_q - den_low_q)
        )
        out = out + piece
        num_left = (num_left - piece * den).truncate_above("q", work)
    if not num_left.is_zero() and min(e[1] for e in num_left.terms) <= q_order:
        raise RuntimeError("series division left a residue inside the valid window")
    check = (out * den).truncate_above("q", q_order)
    if check != num.truncate_above("q", q_order):
        raise RuntimeError("reduced HOMFLY verification failed")
    top_q = max((e[1] for e in out.terms), default=0)
    if top_q > q_order - 2:
        raise RuntimeError(
            f"reduced HOMFLY support reaches the valid window; "
            f"increase q_order beyond {q_order}"
        )
    return out


def pt_partition_function(a_order: int, q_order: int) -> GradedPolynomial:
    """prod_{i>0} (1 - a^2 q^(2i))^(-i) truncated in both variables."""
    out = GradedPolynomial.constant(HQ_VARS, 1)
    for i in range(1, q_order // 2 + 1):
        # (1 - a^2 q^(2i))^(-i) = sum_k C(k+i-1, k) (a^2 q^(2i))^k
        factor = GradedPolynomial(HQ_VARS)
        ft = {}
        k = 0
        while 2 * i * k <= q_order and 2 * k <= a_order:
            ft[(2 * k, 2 * i * k)] = Fraction(comb(k + i - 1, k))
            k += 1
        factor.terms = ft
        out = out * factor
        out = out.truncate_above("q", q_order).truncate_above("a", a_order)
    return out


def pt_series_check(k: TorusKnot, q_order: int) -> dict:
    """Emit both constituents of the stable-pairs identity for external use.

    The right-hand moduli side is outside this library's scope, so only the
    computable left-hand side is produced: the partition-function factor
    and the nested-count series, plus their product.
    """
    z = pt_partition_function(q_order, q_order)
    m, n = min(k.m, k.n), max(k.m, k.n)
    nested = GradedPolynomial(HQ_VARS)
    if m == 1:
        acc = {}
        for l in range(q_order // 2 + 1):
            acc[(0, 2 * l)] = Fraction(1)
            acc[(2, 2 * l)] = Fraction(-1)
        nested.terms = acc
    else:
        S = semigroup(m, n)
        acc = {}
        for l in range(q_order // 2 + 1):
            for d in ideals_of_colength(S, l):
                g = len(d.generators())
                for jump in range(g + 1):
                    key = (2 * jump, 2 * l)
                    acc[key] = acc.get(key, Fraction(0)) + comb(g, jump) * (-1) ** jump
        nested.terms = {e: Fraction(c) for e, c in acc.items() if c}
    product = (z * nested).truncate_above("q", q_order)
    return {"partition_function": z, "nested_series": nested, "product": product}
