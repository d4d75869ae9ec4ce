"""Supercommutative models of colored torus-knot homology.

The model ring has even generators u_i (q-degree 2i) and odd generators
xi_i (q-degree 2i-2), with index range r+1..m'r for the reduced model of
color (r) and 1..m'r unreduced, where m' = min(m,n).  Relations come from
a single potential

    W(T_(m,n); r) = coefficient of z^((m+n)r+1) in
                    (1 + u_1 z + ... + u_(m'r) z^(m'r)) ** ((m+n)/m')

as all du-derivatives (even relations) and all second-derivative
contractions with xi (odd relations); the reduced model sets
u_1 = ... = u_r = 0 *after* differentiating and drops xi_1..xi_r.

The exponent convention (m+n)/min(m,n) is the one that reproduces the
printed derivative coefficients for T(3,4); gradings are

    (a, q, t_c, t_r)[u_i]  = (0, 2i,   2i-2, 2 floor((i-1)/r))
    (a, q, t_c, t_r)[xi_i] = (2, 2i-2, 2i-1, 2 floor((i-1)/r) + 1).

Monomial bases of the quotient are computed per (a, q) bidegree by exact
row reduction; differentials act on basis monomials through the normal
form, and homology dimensions are rank computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Fraction as Rational  # noqa: F401  (re-export convenience)
from .algebra import GradedPolynomial, TruncatedSeries, series_log, series_pow
from .daha import TorusKnot


class FinitenessError(Exception):
    """The graded quotient does not terminate where it should."""


class ModelError(Exception):
    """A differential is inconsistent with the model (d*d != 0 or ill-defined)."""


def _uvars(lo: int, hi: int) -> tuple[str, ...]:
    return tuple(f"u{i}" for i in range(lo, hi + 1))


def potential(k: TorusKnot, r: int) -> GradedPolynomial:
    """The defining potential, a polynomial in u_1..u_(m'r)."""
    if r < 1:
        raise ValueError("color must be >= 1")
    m, n = k.m, k.n
    mp = min(m, n)
    top = mp * r
    target = (m + n) * r + 1
    vars = _uvars(1, top)
    coeffs = [GradedPolynomial.constant(vars, 1)]
    for i in range(1, top + 1):
        coeffs.append(GradedPolynomial.var(vars, f"u{i}"))
    f = TruncatedSeries("z", target, coeffs)
    powed = series_pow(f, Fraction(m + n, mp), target)
    return powed.coefficient(target)


@dataclass(frozen=True)
class SuperRing:
    """Index data of the model: even u_i and odd xi_i for i in lo..hi."""

    lo: int
    hi: int
    color: int

    @property
    def indices(self):
        return range(self.lo, self.hi + 1)

    @property
    def uvars(self):
        return _uvars(self.lo, self.hi)

    def u_qdeg(self, i: int) -> int:
        return 2 * i

    def xi_qdeg(self, i: int) -> int:
        return 2 * i - 2

    def u_degrees(self, i: int):
        """(a, q, tr, tc) of u_i."""
        return (0, 2 * i, 2 * ((i - 1) // self.color), 2 * i - 2)

    def xi_degrees(self, i: int):
        return (2, 2 * i - 2, 2 * ((i - 1) // self.color) + 1, 2 * i - 1)

    def monomial_degrees(self, mono):
        alpha, xis = mono
        a = q = tr = tc = 0
        for i, e in zip(self.indices, alpha):
            if e:
                da, dq, dtr, dtc = self.u_degrees(i)
                q += dq * e
                tr += dtr * e
                tc += dtc * e
        for i in xis:
            da, dq, dtr, dtc = self.xi_degrees(i)
            a += da
            q += dq
            tr += dtr
            tc += dtc
        return (a, q, tr, tc)


class SuperRingElement:
    """Map from (u-exponent tuple, sorted xi index tuple) to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SuperRing, terms=None):
        self.ring = ring
        self.terms = dict(terms) if terms else {}

    @classmethod
    def from_poly(cls, ring: SuperRing, p: GradedPolynomial) -> "SuperRingElement":
        if p.vars != ring.uvars:
            p = p.extend(ring.uvars)
        return cls(ring, {(e, ()): c for e, c in p.terms.items()})

    @classmethod
    def xi(cls, ring: SuperRing, i: int) -> "SuperRingElement":
        zero = (0,) * (ring.hi - ring.lo + 1)
        return cls(ring, {(zero, (i,)): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, Fraction(0)) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return SuperRingElement(self.ring, out)

    def __neg__(self):
        return SuperRingElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SuperRingElement":
        c = Fraction(c)
        if c == 0:
            return SuperRingElement(self.ring)
        return SuperRingElement(self.ring, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "SuperRingElement") -> "SuperRingElement":
        out: dict = {}
        for (a1, s1), c1 in self.terms.items():
            for (a2, s2), c2 in other.terms.items():
                if set(s1) & set(s2):
                    continue
                sign = _merge_sign(s1, s2)
                alpha = tuple(x + y for x, y in zip(a1, a2))
                xis = tuple(sorted(s1 + s2))
                key = (alpha, xis)
                s = out.get(key, Fraction(0)) + sign * c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return SuperRingElement(self.ring, out)

    def monomials(self):
        return list(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (alpha, xis), c in sorted(self.terms.items()):
            us = "".join(
                f"u{i}^{e}" if e > 1 else (f"u{i}" if e == 1 else "")
                for i, e in zip(self.ring.indices, alpha)
            )
            xs = "".join(f"x{i}" for i in xis)
            bits.append(f"{c}*{us}{xs}" if us or xs else str(c))
        return " + ".join(bits)


def _merge_sign(s1, s2) -> int:
    inv = sum(1 for a in s1 for b in s2 if a > b)
    return -1 if inv % 2 else 1


def moduli_relations(k: TorusKnot, r: int, reduced: bool = True):
    """(even relations as polynomials, odd relations as ring elements).

    Even relations are the u-derivatives of the potential; odd relations
    contract the second derivatives with xi.  The reduced model zeroes
    u_1..u_r after differentiation and drops xi_1..xi_r.
    """
    m, n = k.m, k.n
    mp = min(m, n)
    top = mp * r
    W = potential(k, r)
    lo = r + 1 if reduced else 1
    ring = SuperRing(lo, top, r)

    def restrict(p: GradedPolynomial) -> GradedPolynomial:
        if not reduced:
            return p.extend(ring.uvars) if p.vars != ring.uvars else p
        keep = {}
        cut = r  # u_1..u_r are zeroed
        for e, c in p.terms.items():
            if any(e[i] for i in range(cut)):
                continue
            keep[e[cut:]] = c
        out = GradedPolynomial(ring.uvars)
        out.terms = keep
        return out

    even = []
    for i in range(1, top + 1):
        d = restrict(W.derivative(f"u{i}"))
        if not d.is_zero():
            even.append(d)
    odd = []
    for i in range(1, top + 1):
        elem = SuperRingElement(ring)
        for j in range(lo, top + 1):
            dd = restrict(W.derivative(f"u{i}").derivative(f"u{j}"))
            if dd.is_zero():
                continue
            elem = elem + SuperRingElement.from_poly(ring, dd) * SuperRingElement.xi(ring, j)
        if not elem.is_zero():
            odd.append(elem)
    return ring, even, odd


def elimination_relations(k: TorusKnot, r: int, count: int | None = None) -> list[GradedPolynomial]:
    """Reduced-model relations from clearing the auxiliary variable side.

    Raising the u-side to n_max/m' must be a polynomial of z-degree at most
    n_max*r; every higher coefficient is a relation.  `count` controls how
    many coefficients past that bound are taken.
    """
    m, n = k.m, k.n
    mp, npx = min(m, n), max(m, n)
    top = mp * r
    if count is None:
        count = mp * npx * r
    vars = _uvars(r + 1, top)
    order = npx * r + count
    coeffs = [GradedPolynomial.constant(vars, 1)]
    for i in range(1, top + 1):
        if i <= r:
            coeffs.append(GradedPolynomial.constant(vars, 0))
        else:
            coeffs.append(GradedPolynomial.var(vars, f"u{i}"))
    f = TruncatedSeries("z", order, coeffs)
    powed = series_pow(f, Fraction(npx, mp), order)
    out = []
    for j in range(npx * r + 1, order + 1):
        c = powed.coefficient(j)
        if not c.is_zero():
            out.append(c)
    return out


# ---------------------------------------------------------------------------
# graded linear algebra


def _u_monomials(ring: SuperRing, qdeg: int):
    """All u-exponent tuples with sum of 2i * e_i equal to qdeg."""
    idx = list(ring.indices)

    def rec(pos, remaining):
        if pos == len(idx):
            if remaining == 0:
                yield ()
            return
        w = 2 * idx[pos]
        for e in range(remaining // w + 1):
            for rest in rec(pos + 1, remaining - e * w):
                yield (e,) + rest

    if qdeg < 0 or qdeg % 2:
        return []
    return list(rec(0, qdeg))


def _xi_subsets(ring: SuperRing, size: int):
    from itertools import combinations

    return list(combinations(list(ring.indices), size))


@lru_cache(maxsize=None)
def _bidegree_monomials_cached(lo, hi, color, a_deg, q_deg):
    ring = SuperRing(lo, hi, color)
    if a_deg % 2:
        return ()
    out = []
    for xis in _xi_subsets(ring, a_deg // 2):
        xq = sum(2 * i - 2 for i in xis)
        for alpha in _u_monomials(ring, q_deg - xq):
            out.append((alpha, tuple(xis)))
    return tuple(sorted(out))


def bidegree_monomials(ring: SuperRing, a_deg: int, q_deg: int):
    return list(_bidegree_monomials_cached(ring.lo, ring.hi, ring.color, a_deg, q_deg))


class _Echelon:
    """Reduced row echelon data over a fixed ordered monomial basis."""

    def __init__(self, monomials):
        self.index = {m: i for i, m in enumerate(monomials)}
        self.monomials = list(monomials)
        self.rows: dict[int, list] = {}  # pivot column -> row vector

    def reduce_vec(self, v: list) -> list:
        v = list(v)
        for piv in sorted(self.rows):
            if v[piv] != 0:
                c = v[piv]
                row = self.rows[piv]
                for i in range(piv, len(v)):
                    if row[i]:
                        v[i] -= c * row[i]
        return v

    def insert(self, v: list) -> bool:
        v = self.reduce_vec(v)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        c = v[piv]
        v = [x / c for x in v]
        for p, row in self.rows.items():
            if row[piv]:
                f = row[piv]
                self.rows[p] = [a - f * b for a, b in zip(row, v)]
        self.rows[piv] = v
        return True

    @property
    def rank(self):
        return len(self.rows)

    def standard_columns(self):
        return [i for i in range(len(self.monomials)) if i not in self.rows]


def _ideal_echelon(ring, even, odd, a_deg, q_deg) -> _Echelon:
    """Row space of the relation ideal inside one (a, q) bidegree."""
    monos = bidegree_monomials(ring, a_deg, q_deg)
    ech = _Echelon(monos)
    if not monos:
        return ech
    # even relation * any monomial of complementary bidegree
    for rel in even:
        for e0 in rel.terms:
            rq = sum(2 * i * k for i, k in zip(ring.indices, e0))
            break
        relel = SuperRingElement.from_poly(ring, rel)
        for mono in bidegree_monomials(ring, a_deg, q_deg - rq):
            prod = relel * _mono_elem(ring, mono)
            vec = _elem_vector(prod, ech.index)
            if vec is not None:
                ech.insert(vec)
    # odd relation (a-degree 2) * monomial of a-degree a_deg - 2
    if a_deg >= 2:
        for rel in odd:
            (alpha0, xis0) = next(iter(rel.terms))
            rq = sum(2 * i * k for i, k in zip(ring.indices, alpha0)) + sum(
                2 * i - 2 for i in xis0
            )
            for mono in bidegree_monomials(ring, a_deg - 2, q_deg - rq):
                prod = rel * _mono_elem(ring, mono)
                vec = _elem_vector(prod, ech.index)
                if vec is not None:
                    ech.insert(vec)
    return ech


def _mono_elem(ring, mono) -> SuperRingElement:
    alpha, xis = mono
    return SuperRingElement(ring, {(alpha, tuple(xis)): Fraction(1)})


def _elem_vector(elem: SuperRingElement, index: dict):
    if elem.is_zero():
        return None
    v = [Fraction(0)] * len(index)
    for key, c in elem.terms.items():
        v[index[key]] = c
    return v


@dataclass
class GradedBasis:
    """Monomial basis of the quotient with per-generator gradings."""

    knot: TorusKnot
    color: int
    reduced: bool
    ring: SuperRing
    even: list = field(repr=False, default_factory=list)
    odd: list = field(repr=False, default_factory=list)
    generators: list = field(default_factory=list)  # (mono, (a,q,tr,tc))
    q_cutoff: int | None = None

    @property
    def total_dim(self):
        return len(self.generators)

    def poincare(self, vars=("a", "q", "tr", "tc")) -> GradedPolynomial:
        p = GradedPolynomial(vars)
        terms: dict = {}
        for _, deg in self.generators:
            terms[deg] = terms.get(deg, 0) + 1
        p.terms = {e: Fraction(c) for e, c in terms.items()}
        return p

    def dims_by_bidegree(self) -> dict:
        out: dict = {}
        for _, (a, q, tr, tc) in self.generators:
            out[(a, q)] = out.get((a, q), 0) + 1
        return out

    def echelon(self, a_deg, q_deg) -> _Echelon:
        return _ideal_echelon(self.ring, self.even, self.odd, a_deg, q_deg)


def graded_basis(
    k: TorusKnot,
    r: int,
    reduced: bool = True,
    q_cutoff: int | None = None,
    hard_cutoff: int | None = None,
) -> GradedBasis:
    """Monomial basis of the model; reduced models must be finite.

    For unreduced models a q_cutoff is required (the polynomial part is
    free).  For reduced models the even part is enumerated by q-degree
    until a full window of empty degrees proves termination; failure to
    reach one below the hard cutoff raises FinitenessError.
    """
    ring, even, odd = moduli_relations(k, r, reduced)
    basis = GradedBasis(k, r, reduced, ring, even, odd)
    max_xi_q = sum(2 * i - 2 for i in ring.indices)
    n_odd = len(list(ring.indices))

    if not reduced or q_cutoff is not None:
        if q_cutoff is None:
            raise ValueError("unreduced models need an explicit q_cutoff")
        for a_deg in range(0, 2 * n_odd + 1, 2):
            for q_deg in range(0, q_cutoff + 1, 2):
                ech = _ideal_echelon(ring, even, odd, a_deg, q_deg)
                for col in ech.standard_columns():
                    mono = ech.monomials[col]
                    basis.generators.append((mono, ring.monomial_degrees(mono)))
        basis.q_cutoff = q_cutoff
        basis.generators.sort(key=lambda g: g[1])
        return basis

    if hard_cutoff is None:
        hard_cutoff = 8 * (k.m + k.n) * r + 48
    window = ring.hi  # consecutive empty even q-degrees needed (step 2)
    even_dims: dict[int, list] = {}
    q_deg = 0
    empty_run = 0
    top_even = -1
    while True:
        ech = _ideal_echelon(ring, even, odd, 0, q_deg)
        cols = ech.standard_columns()
        even_dims[q_deg] = [ech.monomials[c] for c in cols]
        if cols:
            empty_run = 0
            top_even = q_deg
        else:
            empty_run += 1
            if empty_run >= window:
                break
        q_deg += 2
        if q_deg > hard_cutoff:
            raise FinitenessError(
                f"even quotient of T({k.m},{k.n}) r={r} not finite below q={hard_cutoff}"
            )
    top_q = top_even + max_xi_q
    for a_deg in range(0, 2 * n_odd + 1, 2):
        for q in range(0, top_q + 1, 2):
            if a_deg == 0:
                monos = even_dims.get(q, [])
            else:
                ech = _ideal_echelon(ring, even, odd, a_deg, q)
                monos = [ech.monomials[c] for c in ech.standard_columns()]
            for mono in monos:
                basis.generators.append((mono, ring.monomial_degrees(mono)))
    basis.generators.sort(key=lambda g: g[1])
    return basis


# ---------------------------------------------------------------------------
# differentials


def differential_images(basis: GradedBasis, spec: str, N: int | None = None, k_target: int | None = None):
    """Map xi_i -> polynomial image for the requested differential."""
    ring = basis.ring
    r = basis.color
    lo_zeroed = r if basis.reduced else 0  # u_1..u_r are zero in reduced models

    def u_poly(j: int) -> GradedPolynomial:
        if j == 0:
            return GradedPolynomial.constant(ring.uvars, 1)
        if j < ring.lo or j > ring.hi:
            return GradedPolynomial.constant(ring.uvars, 0)
        return GradedPolynomial.var(ring.uvars, f"u{j}")

    images = {}
    if spec == "dN":
        if N is None:
            raise ValueError("dN needs N")
        for i in ring.indices:
            if N > 0:
                total = GradedPolynomial.constant(ring.uvars, 0)
                for comp in _compositions(N + i - 1, N):
                    if any(j <= lo_zeroed or j > ring.hi for j in comp):
                        continue
                    term = GradedPolynomial.constant(ring.uvars, 1)
                    for j in comp:
                        term = term * u_poly(j)
                    total = total + term
                images[i] = total
            elif N == 0:
                images[i] = u_poly(i - 1) if i - 1 > lo_zeroed or i - 1 == 0 else GradedPolynomial.constant(ring.uvars, 0)
            else:
                images[i] = (
                    GradedPolynomial.constant(ring.uvars, 1)
                    if N + i - 1 == 0
                    else GradedPolynomial.constant(ring.uvars, 0)
                )
    elif spec == "colored_plus":
        if k_target is None:
            raise ValueError("colored differentials need the target color")
        for i in ring.indices:
            j = i - k_target
            if j == 0:
                images[i] = GradedPolynomial.constant(ring.uvars, 1)
            elif j <= lo_zeroed or j > ring.hi:
                images[i] = GradedPolynomial.constant(ring.uvars, 0)
            else:
                images[i] = u_poly(j)
    elif spec == "colored_minus":
        if k_target is None:
            raise ValueError("colored differentials need the target color")
        for i in ring.indices:
            images[i] = (
                GradedPolynomial.constant(ring.uvars, 1)
                if i == r + k_target + 1
                else GradedPolynomial.constant(ring.uvars, 0)
            )
    else:
        raise ValueError(f"unknown differential {spec!r}")
    return images


def _compositions(total, parts):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _apply_d(basis: GradedBasis, images, mono) -> SuperRingElement:
    """Leibniz extension of xi_i -> images[i], u_i -> 0, on one monomial."""
    ring = basis.ring
    alpha, xis = mono
    out = SuperRingElement(ring)
    for pos, i in enumerate(xis):
        img = images[i]
        if img.is_zero():
            continue
        rest = xis[:pos] + xis[pos + 1:]
        sign = -1 if pos % 2 else 1
        piece = SuperRingElement.from_poly(ring, img) * SuperRingElement(
            ring, {(alpha, rest): Fraction(sign)}
        )
        out = out + piece
    return out


def apply_differential(basis: GradedBasis, spec: str, N: int | None = None, k_target: int | None = None):
    """Homology dimensions of the differential on the quotient, per bidegree.

    The differential is defined on basis monomials by the Leibniz rule
    followed by normal-form reduction; d*d = 0 is verified on every basis
    monomial and a ModelError is raised otherwise.
    """
    images = differential_images(basis, spec, N=N, k_target=k_target)
    ring = basis.ring
    q_shift = None
    for i, img in images.items():
        if img.is_zero():
            continue
        for e in img.terms:
            iq = sum(2 * j * k for j, k in zip(ring.indices, e))
            q_shift = iq - (2 * i - 2)
            break
        if q_shift is not None:
            break
    if q_shift is None:
        q_shift = 0  # zero differential

    by_bidegree: dict = {}
    for mono, deg in basis.generators:
        by_bidegree.setdefault((deg[0], deg[1]), []).append(mono)

    echelons: dict = {}
    standard: dict = {}
    for key, monos in by_bidegree.items():
        ech = basis.echelon(*key)
        cols = ech.standard_columns()
        std = [ech.monomials[c] for c in cols]
        if sorted(std) != sorted(monos):
            raise ModelError("stored basis does not match recomputed standard monomials")
        echelons[key] = ech
        standard[key] = {m: i for i, m in enumerate(std)}

    def normal_coords(elem: SuperRingElement, key):
        if key not in echelons:
            # target bidegree entirely killed by the ideal (or empty)
            ech = basis.echelon(*key)
            cols = ech.standard_columns()
            echelons[key] = ech
            standard[key] = {ech.monomials[c]: i for i, c in enumerate(cols)}
        ech = echelons[key]
        std = standard[key]
        if not ech.monomials:
            if not elem.is_zero():
                raise ModelError("image lands outside the model's support")
            return [0] * len(std)
        vec = [Fraction(0)] * len(ech.monomials)
        for mk, c in elem.terms.items():
            if mk not in ech.index:
                raise ModelError("image monomial outside bidegree enumeration")
            vec[ech.index[mk]] = c
        red = ech.reduce_vec(vec)
        coords = [Fraction(0)] * len(std)
        for m2, pos in std.items():
            coords[pos] = red[ech.index[m2]]
        # anything not on a standard column must have been eliminated
        for i, x in enumerate(red):
            if x != 0 and ech.monomials[i] not in std:
                raise ModelError("normal form retained a pivot column")
        return coords

    # matrices of d per source bidegree
    mats: dict = {}
    for (a, q), monos in sorted(by_bidegree.items()):
        tgt = (a - 2, q + q_shift)
        tgt_std = standard.get(tgt)
        if tgt_std is None and tgt in by_bidegree:
            tgt_std = standard[tgt]
        cols = []
        for mono in monos:
            img = _apply_d(basis, images, mono)
            coords = normal_coords(img, tgt) if (tgt in by_bidegree or not img.is_zero()) else []
            cols.append(coords)
        mats[(a, q)] = cols

    # verify d*d = 0
    for (a, q), monos in by_bidegree.items():
        for mono in monos:
            img = _apply_d(basis, images, mono)
            img2 = SuperRingElement(ring)
            for mk, c in img.terms.items():
                img2 = img2 + _apply_d(basis, images, mk).scale(c)
            tgt2 = (a - 4, q + 2 * q_shift)
            if not img2.is_zero():
                coords = normal_coords(img2, tgt2)
                if any(x != 0 for x in coords):
                    raise ModelError(f"d applied twice is nonzero on {mono}")

    def rank_of(cols):
        if not cols or not any(cols):
            return 0
        width = max(len(c) for c in cols)
        ech = _Echelon(list(range(width)))
        rk = 0
        for c in cols:
            v = list(c) + [Fraction(0)] * (width - len(c))
            if ech.insert(v):
                rk += 1
        return rk

    homology = {}
    total = 0
    for (a, q), monos in sorted(by_bidegree.items()):
        dim = len(monos)
        out_rank = rank_of([c for c in mats[(a, q)] if c])
        src = (a + 2, q - q_shift)
        in_rank = rank_of([c for c in mats.get(src, []) if c]) if src in mats else 0
        h = dim - out_rank - in_rank
        if h < 0:
            raise ModelError("negative homology dimension (rank bookkeeping broke)")
        if h:
            homology[(a, q)] = h
            total += h
    return {"dims": homology, "total": total, "q_shift": q_shift}


# ---------------------------------------------------------------------------
# Landau-Ginzburg potentials for the unknot


def slN_potential(N: int, r: int, kind: str) -> GradedPolynomial:
    """Unknot potentials extracted from the two logarithmic generating series."""
    if N < 1 or r < 1:
        raise ValueError("N and r must be >= 1")
    vars = _uvars(1, r)
    coeffs = [GradedPolynomial.constant(vars, 1)] + [
        GradedPolynomial.var(vars, f"u{i}") for i in range(1, r + 1)
    ]
    if kind == "antisym":
        order = N + 1
        f = TruncatedSeries("t", order, coeffs)
        w = series_log(f, order).coefficient(order)
        return w * Fraction((-1) ** N)
    if kind == "sym":
        order = N + r
        f = TruncatedSeries("t", order, coeffs)
        product = f * series_log(f, order)
        return product.coefficient(order) * Fraction((-1) ** N)
    raise ValueError(f"unknown kind {kind!r}")


def jacobi_dim(W: GradedPolynomial) -> int:
    """Dimension of Q[u]/(dW/du_i); FinitenessError on positive-dimensional ideals.

    Uses the weighted grading deg(u_i) = i under which the inputs here are
    homogeneous.
    """
    vars = W.vars
    weights = [int(v[1:]) for v in vars]
    rels = [W.derivative(v) for v in vars]
    rels = [p for p in rels if not p.is_zero()]
    if not rels:
        raise FinitenessError("potential has no relations; quotient is infinite")

    def monomials_of_weight(w):
        def rec(pos, remaining):
            if pos == len(weights):
                if remaining == 0:
                    yield ()
                return
            step = weights[pos]
            for e in range(remaining // step + 1):
                for rest in rec(pos + 1, remaining - e * step):
                    yield (e,) + rest

        return list(rec(0, w))

    def rel_weight(p):
        e = next(iter(p.terms))
        return sum(w * k for w, k in zip(weights, e))

    window = max(weights)
    hard = sum(rel_weight(p) for p in rels) + sum(weights) + 8
    total = 0
    empty_run = 0
    w = 0
    while True:
        monos = monomials_of_weight(w)
        ech = _Echelon(monos)
        index = {m: i for i, m in enumerate(monos)}
        for p in rels:
            rw = rel_weight(p)
            for mult in monomials_of_weight(w - rw):
                prod_terms = {}
                for e, c in p.terms.items():
                    key = tuple(x + y for x, y in zip(e, mult))
                    prod_terms[key] = prod_terms.get(key, Fraction(0)) + c
                vec = [Fraction(0)] * len(monos)
                for key, c in prod_terms.items():
                    vec[index[key]] = c
                ech.insert(vec)
        dim = len(monos) - ech.rank
        total += dim
        if dim == 0 and w > 0:
            empty_run += 1
            if empty_run >= window:
                return total
        elif w > 0:
            empty_run = 0
        w += 1
        if w > hard:
            raise FinitenessError("Jacobi ideal appears positive-dimensional")
