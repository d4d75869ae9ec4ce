"""Localization sum over standard Young tableaux for torus-knot superpolynomials.

The unreduced superpolynomial of T(m,n) is computed in variables (A, Q, T)
as a double sum: over partitions of n, and over standard tableaux of each
shape.  Every tableau term is a product of factors of the form
c * Q^x * T^y * (1 - Q^a T^b); denominators are kept as factor multisets,
the sum is accumulated over their least common multiple, and the result is
cleared by exact division.  A failure of that division signals a
transcription bug, not bad input.

The box-weight convention and the orientation of the pair factors are not
decidable from prose alone; the combination used here is pinned by golden
tests: the trefoil value, exact m<->n symmetry, and the equality of all
T(1,n) with the unknot.  With chi_i = Q^(-col) T^(row) for the box labeled
i, the term of one tableau is

    (Q/T)^n * gamma^n / g(shape) *
    prod_i chi_i^(S(i)) (1 - A/chi_i) (1 - (T/Q) chi_i)
    / prod_k (1 - Q chi_(k+1) / (T chi_k))
    * prod_(i<j) (chi_i - chi_j/Q)(chi_i - T chi_j)
                 / ((chi_i - chi_j)(chi_i - (T/Q) chi_j))

with S(i) = floor(i*m/n) - floor((i-1)*m/n),
gamma = (T-1)(Q-1)/(Q-T) and
g(shape) = prod_boxes (1 - Q^arm T^(leg+1)) (1 - Q^(-arm-1) T^(-leg)).

A point-evaluation backend computes the same sum with Fraction-valued
(A, Q, T), which scales to sizes where the symbolic sum does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import GradedPolynomial, InternalError, PoleError
from .tableaux import Partition, partitions_of, syt_of

DAHA_VARS = ("A", "Q", "T")

#: Variables of the homological form after the change of variables.
HOM_VARS = ("a", "q", "tc")

SYMBOLIC_LIMIT_DEFAULT = 7


class ScaleError(Exception):
    """Symbolic computation refused; use the point backend."""


@dataclass(frozen=True)
class TorusKnot:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("torus knot parameters must be positive")
        if gcd(self.m, self.n) != 1:
            raise ValueError(f"gcd({self.m},{self.n}) != 1; torus links are out of scope")

    def swapped(self) -> "TorusKnot":
        return TorusKnot(self.n, self.m)

    @property
    def milnor(self) -> int:
        return (self.m - 1) * (self.n - 1)


@dataclass(frozen=True)
class SuperPolynomial:
    """A Laurent polynomial value plus the record of its normalization."""

    value: GradedPolynomial
    normalization: str


def s_fraction(m: int, n: int, i: int) -> int:
    """Stair-step exponent floor(i*m/n) - floor((i-1)*m/n)."""
    if not 1 <= i <= n:
        raise IndexError(f"i={i} out of range 1..{n}")
    return (i * m) // n - ((i - 1) * m) // n


def _chi_exponents(tableau) -> list[tuple[int, int]]:
    """(Q, T)-exponents of chi_i = Q^(-col) T^(row), i = 1..n."""
    return [(-c, r) for (r, c) in tableau.position]


def _normalize_binomial(a: int, b: int):
    """Rewrite (1 - Q^a T^b) as coef * Q^x T^y * (1 - Q^alpha T^beta).

    The returned key (alpha, beta) is lexicographically positive, so equal
    factors from different sources collide.  Returns (key, coef, x, y).
    """
    if (a, b) == (0, 0):
        raise ZeroDivisionError("binomial factor (1 - 1) is zero")
    if (a, b) < (0, 0):
        # 1 - x^(-1) = -x^(-1) (1 - x)
        return (-a, -b), -1, a, b
    return (a, b), 1, 0, 0


class _FactorCounter:
    """Multiset of canonical binomial keys with a running monomial prefactor."""

    __slots__ = ("counts", "coef", "qx", "ty")

    def __init__(self):
        self.counts: dict = {}
        self.coef = Fraction(1)
        self.qx = 0
        self.ty = 0

    def push(self, a: int, b: int, mult: int = 1):
        key, c, x, y = _normalize_binomial(a, b)
        self.counts[key] = self.counts.get(key, 0) + mult
        if c == -1 and mult % 2:
            self.coef = -self.coef
        self.qx += x * mult
        self.ty += y * mult

    def push_monomial(self, coef, qx=0, ty=0):
        self.coef *= coef
        self.qx += qx
        self.ty += ty


def _cancel(num: _FactorCounter, den: _FactorCounter):
    for key in list(num.counts):
        if key in den.counts:
            k = min(num.counts[key], den.counts[key])
            num.counts[key] -= k
            den.counts[key] -= k
            if num.counts[key] == 0:
                del num.counts[key]
            if den.counts[key] == 0:
                del den.counts[key]


def _binomial_poly(key) -> GradedPolynomial:
    a, b = key
    return GradedPolynomial(
        DAHA_VARS, {(0, 0, 0): Fraction(1), (0, a, b): Fraction(-1)}
    )


def _term_factors(m, n, chi):
    """Numerator/denominator factor multisets of one tableau term.

    `chi` lists the (Q, T)-exponents of chi_1..chi_n.  The A-dependent
    product prod (1 - A/chi_i) is expanded by the caller.
    """
    num = _FactorCounter()
    den = _FactorCounter()

    # (Q/T)^n * gamma^n, gamma = (T-1)(Q-1)/(Q-T)
    num.push_monomial(Fraction(1), n, -n)
    num.push(0, 1, n)            # (T-1)^n = (-(1-T))^n
    num.push(1, 0, n)            # (Q-1)^n
    if (2 * n) % 2:              # pragma: no cover - always even
        num.push_monomial(Fraction(-1))
    den.push(1, -1, n)           # (Q-T)^n = (-T)^n (1 - Q T^(-1))^n
    den.push_monomial(Fraction((-1) ** n), 0, n)

    for i, (x, y) in enumerate(chi, start=1):
        s = s_fraction(m, n, i)
        num.push_monomial(Fraction(1), x * s, y * s)
        # (1 - (T/Q) chi_i)
        num.push(x - 1, y + 1)

    for k in range(n - 1):
        x0, y0 = chi[k]
        x1, y1 = chi[k + 1]
        # (1 - Q chi_(k+1) / (T chi_k))
        den.push(x1 - x0 + 1, y1 - y0 - 1)

    for i in range(n):
        xi, yi = chi[i]
        for j in range(i + 1, n):
            xj, yj = chi[j]
            dx, dy = xj - xi, yj - yi
            # (chi_i - chi_j/Q) = chi_i (1 - Q^(dx-1) T^dy)
            num.push(dx - 1, dy)
            num.push_monomial(Fraction(1), xi, yi)
            # (chi_i - T chi_j) = chi_i (1 - Q^dx T^(dy+1))
            num.push(dx, dy + 1)
            num.push_monomial(Fraction(1), xi, yi)
            # (chi_i - chi_j) = chi_i (1 - Q^dx T^dy)
            den.push(dx, dy)
            den.push_monomial(Fraction(1), xi, yi)
            # (chi_i - (T/Q) chi_j) = chi_i (1 - Q^(dx-1) T^(dy+1))
            den.push(dx - 1, dy + 1)
            den.push_monomial(Fraction(1), xi, yi)

    _cancel(num, den)
    return num, den


def _shape_denominator(shape: Partition, den: _FactorCounter):
    for r, c in shape.boxes():
        a = shape.arm(r, c)
        l = shape.leg(r, c)
        den.push(a, l + 1)
        den.push(-a - 1, -l)


def theorem13_constants(mu: Partition):
    """(gamma as a rational expression, g_mu as a Laurent polynomial) in (A,Q,T)."""
    one = GradedPolynomial.constant(DAHA_VARS, 1)
    T = GradedPolynomial.var(DAHA_VARS, "T")
    Q = GradedPolynomial.var(DAHA_VARS, "Q")
    from .algebra import RationalExpression

    gamma = RationalExpression((T - one) * (Q - one), Q - T)
    g = one
    for r, c in mu.boxes():
        a = mu.arm(r, c)
        l = mu.leg(r, c)
        g = g * (one - GradedPolynomial.monomial(DAHA_VARS, (0, a, l + 1)))
        g = g * (one - GradedPolynomial.monomial(DAHA_VARS, (0, -a - 1, -l)))
    return gamma, g


def daha_superpoly(k: TorusKnot, symbolic_limit: int = SYMBOLIC_LIMIT_DEFAULT) -> SuperPolynomial:
    """Unreduced superpolynomial of T(m,n) as an exact Laurent polynomial."""
    m, n = k.m, k.n
    if n > symbolic_limit:
        raise ScaleError(
            f"n={n} exceeds the symbolic limit {symbolic_limit}; use daha_at_point"
        )
    terms = []
    lcm: dict = {}
    for mu in partitions_of(n):
        for t in syt_of(mu):
            chi = _chi_exponents(t)
            num, den = _term_factors(m, n, chi)
            _shape_denominator(mu, den)
            _cancel(num, den)
            poly = GradedPolynomial.monomial(
                DAHA_VARS, (0, num.qx - den.qx, num.ty - den.ty), num.coef / den.coef
            )
            for key, mult in num.counts.items():
                b = _binomial_poly(key)
                for _ in range(mult):
                    poly = poly * b
            for x, y in chi:
                # (1 - A / chi_i)
                poly = poly * (
                    GradedPolynomial.constant(DAHA_VARS, 1)
                    - GradedPolynomial.monomial(DAHA_VARS, (1, -x, -y))
                )
            terms.append((poly, den.counts))
            for key, mult in den.counts.items():
                if lcm.get(key, 0) < mult:
                    lcm[key] = mult
    total = GradedPolynomial.constant(DAHA_VARS, 0)
    for poly, counts in terms:
        for key, mult in lcm.items():
            extra = mult - counts.get(key, 0)
            if extra:
                b = _binomial_poly(key)
                for _ in range(extra):
                    poly = poly * b
        total = total + poly
    for key, mult in lcm.items():
        b = _binomial_poly(key)
        for _ in range(mult):
            try:
                total = total.exact_div(b)
            except Exception as exc:
                raise InternalError(
                    f"denominator {key} does not clear for T({m},{n})"
                ) from exc
    total = -total
    return SuperPolynomial(total, normalization=f"unreduced T({m},{n}) in (A,Q,T)")


def unknot_value() -> GradedPolynomial:
    """Closed single-tableau value for T(1,1): (1 - A) Q/T.

    The global sign of the sum is chosen so that the homological change of
    variables produces nonnegative coefficients.
    """
    return GradedPolynomial(
        DAHA_VARS, {(0, 1, -1): Fraction(1), (1, 1, -1): Fraction(-1)}
    )


def reduced_superpoly(k: TorusKnot, symbolic_limit: int = SYMBOLIC_LIMIT_DEFAULT) -> GradedPolynomial:
    """daha_superpoly divided by the T(1,1) value; exact by construction."""
    p = daha_superpoly(k, symbolic_limit)
    return p.value.exact_div(unknot_value())


def daha_at_point(k: TorusKnot, a, q, t) -> Fraction:
    """Evaluate the localization sum at a rational point (A, Q, T) = (a, q, t)."""
    a, q, t = Fraction(a), Fraction(q), Fraction(t)
    if q == 0 or t == 0:
        raise PoleError("Q and T must be nonzero (weights are inverted)")
    if q == t:
        raise PoleError("Q = T is a pole of gamma")
    m, n = k.m, k.n
    total = Fraction(0)
    for mu in partitions_of(n):
        gden = Fraction(1)
        for r, c in mu.boxes():
            arm, leg = mu.arm(r, c), mu.leg(r, c)
            for aa, bb in ((arm, leg + 1), (-arm - 1, -leg)):
                f = 1 - q**aa * t**bb
                if f == 0:
                    raise PoleError(f"g factor (1 - Q^{aa} T^{bb}) vanishes")
                gden *= f
        gamma = ((t - 1) * (q - 1) / (q - t)) ** n
        for tab in syt_of(mu):
            chi = [q ** (-c) * t**r for (r, c) in tab.position]
            term = Fraction(1)
            for i, cc in enumerate(chi, start=1):
                term *= cc ** s_fraction(m, n, i) * (1 - a / cc) * (1 - t * cc / q)
            for kk in range(n - 1):
                f = 1 - q * chi[kk + 1] / (t * chi[kk])
                if f == 0:
                    raise PoleError("chain factor vanishes at the point")
                term /= f
            for i in range(n):
                for j in range(i + 1, n):
                    ci, cj = chi[i], chi[j]
                    dnm = (ci - cj) * (ci - t * cj / q)
                    if dnm == 0:
                        raise PoleError("pair factor vanishes at the point")
                    term *= (ci - cj / q) * (ci - t * cj)
                    term /= dnm
            total += gamma / gden * term
    return -((q / t) ** n) * total


def specialize(p: SuperPolynomial | GradedPolynomial, target: str, N: int | None = None) -> GradedPolynomial:
    """Change of variables: 'homological' (A,Q,T)->(a,q,tc) or 'slN' A->T^N."""
    poly = p.value if isinstance(p, SuperPolynomial) else p
    if target == "homological":
        images = {
            "A": GradedPolynomial.monomial(HOM_VARS, (2, 0, 1), -1),
            "Q": GradedPolynomial.monomial(HOM_VARS, (0, 2, 2)),
            "T": GradedPolynomial.monomial(HOM_VARS, (0, 2, 0)),
        }
        return poly.substitute_monomials(images)
    if target == "slN":
        if N is None or N < 1:
            raise ValueError("slN specialization needs N >= 1")
        images = {
            "A": GradedPolynomial.monomial(("Q", "T"), (0, N)),
            "Q": GradedPolynomial.monomial(("Q", "T"), (1, 0)),
            "T": GradedPolynomial.monomial(("Q", "T"), (0, 1)),
        }
        return poly.substitute_monomials(images)
    raise ValueError(f"unknown specialization target {target!r}")
