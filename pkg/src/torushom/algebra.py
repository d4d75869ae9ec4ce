"""Exact arithmetic core: sparse multivariate Laurent polynomials over Q.

A polynomial is a map from integer exponent vectors (negative entries
allowed) to nonzero Fraction coefficients.  All arithmetic is exact; there
is no floating point anywhere.  The canonical term order is lexicographic
on exponent tuples, which makes equality, serialization and division
deterministic.

Division is exact division in the Laurent ring: `exact_div` either returns
the unique quotient or raises DivisionError carrying the remainder.  There
is deliberately no general multivariate gcd; sums of rational expressions
are accumulated over explicit denominators and cleared at the end by exact
division.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

Rational = Fraction


class AlgebraError(Exception):
    pass


class DivisionError(AlgebraError):
    """Exact division failed; `remainder` holds the nonzero remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class PoleError(AlgebraError):
    """A denominator vanished at the evaluation point."""


class SeriesBaseError(AlgebraError):
    """Series operation requires constant term 1."""


class InternalError(AlgebraError):
    """An identity the implementation relies on failed (transcription bug)."""


def _coef_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class GradedPolynomial:
    """Sparse Laurent polynomial with named variables and Fraction coefficients.

    Instances are treated as immutable; every operation returns a new
    polynomial.  `vars` is an ordered tuple of variable names and every
    exponent tuple has the same length.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple, Fraction] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for exp, coef in terms.items():
                c = Fraction(coef)
                if c == 0:
                    continue
                e = tuple(int(x) for x in exp)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for vars {self.vars}")
                clean[e] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, vars, value) -> "GradedPolynomial":
        c = Fraction(value)
        vars = tuple(vars)
        if c == 0:
            return cls(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars, exponents, coef=1) -> "GradedPolynomial":
        return cls(vars, {tuple(exponents): Fraction(coef)})

    @classmethod
    def var(cls, vars, name, power=1, coef=1) -> "GradedPolynomial":
        vars = tuple(vars)
        exp = [0] * len(vars)
        exp[vars.index(name)] = power
        return cls(vars, {tuple(exp): Fraction(coef)})

    # -- basics ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.vars): Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def _check_compatible(self, other: "GradedPolynomial"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def coefficient(self, exponents) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return GradedPolynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.constant(self.vars, other)
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        p = GradedPolynomial(self.vars)
        p.terms = out
        return p

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return GradedPolynomial(self.vars)
            return GradedPolynomial(self.vars, {e: k * c for e, k in self.terms.items()})
        self._check_compatible(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        # clear denominators once so the inner loop runs on machine integers
        d1 = 1
        for c in a.values():
            d1 = d1 * c.denominator // gcd(d1, c.denominator)
        d2 = 1
        for c in b.values():
            d2 = d2 * c.denominator // gcd(d2, c.denominator)
        ia = [(e, c.numerator * (d1 // c.denominator)) for e, c in a.items()]
        ib = [(e, c.numerator * (d2 // c.denominator)) for e, c in b.items()]
        out: dict = {}
        get = out.get
        for ea, ca in ia:
            for eb, cb in ib:
                e = tuple(map(int.__add__, ea, eb))
                v = get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        dd = d1 * d2
        p = GradedPolynomial(self.vars)
        p.terms = {e: Fraction(v, dd) for e, v in out.items() if v}
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.is_monomial():
                (e, c), = self.terms.items()
                return GradedPolynomial(self.vars, {tuple(x * k for x in e): c**k})
            raise ValueError("negative power of a non-monomial")
        result = GradedPolynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    # -- ordering, division ------------------------------------------------

    def leading(self) -> tuple:
        """Lexicographically largest exponent tuple."""
        return max(self.terms)

    def exponent_box(self):
        """Componentwise (min, max) exponent over the support."""
        mins = None
        maxs = None
        for e in self.terms:
            if mins is None:
                mins, maxs = list(e), list(e)
            else:
                for i, x in enumerate(e):
                    if x < mins[i]:
                        mins[i] = x
                    if x > maxs[i]:
                        maxs[i] = x
        return mins, maxs

    def exact_div(self, other: "GradedPolynomial") -> "GradedPolynomial":
        """Divide exactly in the Laurent ring; raise DivisionError otherwise."""
        self._check_compatible(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return GradedPolynomial(self.vars)
        if other.is_monomial():
            (eb, cb), = other.terms.items()
            return GradedPolynomial(
                self.vars,
                {tuple(x - y for x, y in zip(e, eb)): c / cb for e, c in self.terms.items()},
            )
        min_p, max_p = self.exponent_box()
        min_q, max_q = other.exponent_box()
        lo = [a - b for a, b in zip(min_p, min_q)]
        hi = [a - b for a, b in zip(max_p, max_q)]
        lt_q = other.leading()
        c_q = other.terms[lt_q]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lt_r = max(rem)
            e = tuple(x - y for x, y in zip(lt_r, lt_q))
            if any(x < l or x > h for x, l, h in zip(e, lo, hi)):
                r = GradedPolynomial(self.vars)
                r.terms = rem
                raise DivisionError("non-exact division", remainder=r)
            c = rem[lt_r] / c_q
            quot[e] = c
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(e, eb))
                s = rem.get(key, Fraction(0)) - c * cb
                if s == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = s
        p = GradedPolynomial(self.vars)
        p.terms = quot
        return p

    def divides(self, other: "GradedPolynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except DivisionError:
            return False

    # -- substitution and evaluation ----------------------------------------

    def rename(self, mapping: Mapping[str, str]) -> "GradedPolynomial":
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("rename collides variable names")
        p = GradedPolynomial(new_vars)
        p.terms = dict(self.terms)
        return p

    def extend(self, vars) -> "GradedPolynomial":
        """Re-embed into a larger variable list (superset, any order)."""
        vars = tuple(vars)
        idx = [vars.index(v) for v in self.vars]
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, x in zip(idx, e):
                ne[i] = x
            out[tuple(ne)] = c
        p = GradedPolynomial(vars)
        p.terms = out
        return p

    def substitute_monomials(self, images: Mapping[str, "GradedPolynomial"]) -> "GradedPolynomial":
        """Substitute variables by *monomials* (supports negative exponents).

        Variables absent from `images` are kept.  The result lives in the
        variable set of the images (all images must share one var tuple).
        """
        target_vars = None
        for img in images.values():
            if not img.is_monomial():
                raise ValueError("substitute_monomials requires monomial images")
            target_vars = img.vars if target_vars is None else target_vars
            if img.vars != target_vars:
                raise ValueError("images must share a variable list")
        if target_vars is None:
            return self
        for v in self.vars:
            if v not in images and v not in target_vars:
                raise ValueError(f"no image for variable {v}")
        out = GradedPolynomial.constant(target_vars, 0)
        for e, c in self.terms.items():
            mono_exp = [0] * len(target_vars)
            coef = c
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                if v in images:
                    (ie, ic), = images[v].terms.items()
                    coef *= ic**k
                    for i, x in enumerate(ie):
                        mono_exp[i] += x * k
                else:
                    mono_exp[target_vars.index(v)] += k
            out += GradedPolynomial.monomial(target_vars, mono_exp, coef)
        return out

    def substitute_poly(self, name: str, image: "GradedPolynomial") -> "GradedPolynomial":
        """Substitute one variable by a polynomial (nonnegative exponents only)."""
        i = self.vars.index(name)
        image = image.extend(self.vars)
        powers = {0: GradedPolynomial.constant(self.vars, 1)}
        out = GradedPolynomial.constant(self.vars, 0)
        for e, c in self.terms.items():
            k = e[i]
            if k < 0:
                raise ValueError(f"negative exponent of {name}; polynomial image not invertible")
            if k not in powers:
                powers[k] = powers[max(powers)] * image ** (k - max(powers)) if False else image**k
            rest = list(e)
            rest[i] = 0
            out += GradedPolynomial.monomial(self.vars, rest, c) * powers[k]
        return out

    def eval(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Exact evaluation at a rational point (nonzero where inverted)."""
        vals = []
        for v in self.vars:
            if v not in assignment:
                raise ValueError(f"missing value for {v}")
            vals.append(Fraction(assignment[v]))
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k == 0:
                    continue
                if x == 0 and k < 0:
                    raise PoleError(f"evaluation inverts zero for exponent {k}")
                t *= x**k
            total += t
        return total

    def derivative(self, name: str) -> "GradedPolynomial":
        """Partial derivative (exponents must be nonnegative in `name`)."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            if k < 0:
                raise ValueError("derivative of a negative power")
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = c * k
        p = GradedPolynomial(self.vars)
        p.terms = out
        return p

    # -- structure helpers ---------------------------------------------------

    def degrees_of(self, name: str):
        i = self.vars.index(name)
        return sorted({e[i] for e in self.terms})

    def coefficient_of(self, name: str, power: int) -> "GradedPolynomial":
        """Coefficient of name**power, as a polynomial with the variable zeroed."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == power:
                ne = list(e)
                ne[i] = 0
                out[tuple(ne)] = c
        p = GradedPolynomial(self.vars)
        p.terms = out
        return p

    def truncate_above(self, name: str, order: int) -> "GradedPolynomial":
        i = self.vars.index(name)
        p = GradedPolynomial(self.vars)
        p.terms = {e: c for e, c in self.terms.items() if e[i] <= order}
        return p

    def content_monomial(self) -> "GradedPolynomial":
        """The canonical monomial m with self/m having lex-lowest term +1."""
        if self.is_zero():
            raise ValueError("zero polynomial has no content monomial")
        e = min(self.terms)
        return GradedPolynomial.monomial(self.vars, e, self.terms[e])

    def proportional(self, other: "GradedPolynomial"):
        """If self = monomial * other, return that monomial, else None."""
        if self.vars != other.vars:
            return None
        if self.is_zero() or other.is_zero():
            return None
        if len(self.terms) != len(other.terms):
            return None
        es, eo = min(self.terms), min(other.terms)
        shift = tuple(a - b for a, b in zip(es, eo))
        ratio = self.terms[es] / other.terms[eo]
        for e, c in other.terms.items():
            key = tuple(a + b for a, b in zip(e, shift))
            if self.terms.get(key) != c * ratio:
                return None
        return GradedPolynomial.monomial(self.vars, shift, ratio)

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coef": _coef_str(c)}
                for e, c in sorted(self.terms.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj) -> "GradedPolynomial":
        return cls(obj["vars"], {tuple(t["exp"]): Fraction(t["coef"]) for t in obj["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "GradedPolynomial":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k != 0
            )
            if not mono:
                parts.append(_coef_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{_coef_str(c)}*{mono}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s


def poly_op(p: GradedPolynomial, q: GradedPolynomial, kind: str) -> GradedPolynomial:
    """Dispatch add | mul | exact_div on a pair of polynomials."""
    if kind == "add":
        return p + q
    if kind == "mul":
        return p * q
    if kind == "exact_div":
        return p.exact_div(q)
    raise ValueError(f"unknown kind {kind!r}")


class RationalExpression:
    """A quotient of GradedPolynomials; reduction only by exact division.

    There is no gcd machinery: `simplify` cancels monomial content and
    attempts one exact division, which suffices because every end result in
    this library is a Laurent polynomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: GradedPolynomial, den: GradedPolynomial | None = None):
        if den is None:
            den = GradedPolynomial.constant(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.vars != den.vars:
            raise ValueError("variable mismatch in rational expression")
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: GradedPolynomial) -> "RationalExpression":
        return cls(p)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalExpression(GradedPolynomial.constant(self.num.vars, other))
        if self.den == other.den:
            return RationalExpression(self.num + other.num, self.den)
        # one denominator often divides the other exactly; avoid the blowup
        # of multiplying unrelated denominators when it does
        try:
            q = other.den.exact_div(self.den)
            return RationalExpression(self.num * q + other.num, other.den)
        except DivisionError:
            pass
        try:
            q = self.den.exact_div(other.den)
            return RationalExpression(self.num + other.num * q, self.den)
        except DivisionError:
            pass
        return RationalExpression(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalExpression(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalExpression(GradedPolynomial.constant(self.num.vars, other))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalExpression(self.num * other, self.den)
        if isinstance(other, GradedPolynomial):
            other = RationalExpression(other)
        a, b = self.num, self.den
        c, d = other.num, other.den
        # cross-cancel exactly divisible pairs before multiplying out
        if not a.is_zero() and not d.is_one():
            try:
                a = a.exact_div(d)
                d = GradedPolynomial.constant(a.vars, 1)
            except DivisionError:
                pass
        if not c.is_zero() and not b.is_one():
            try:
                c = c.exact_div(b)
                b = GradedPolynomial.constant(c.vars, 1)
            except DivisionError:
                pass
        return RationalExpression(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalExpression(self.num, self.den * other)
        if isinstance(other, GradedPolynomial):
            other = RationalExpression(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero expression")
        return RationalExpression(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalExpression(GradedPolynomial.constant(self.num.vars, other))
        if not isinstance(other, RationalExpression):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash(self.simplify_key())

    def simplify_key(self):
        s = self.simplify()
        return (s.num, s.den)

    def simplify(self) -> "RationalExpression":
        """Cancel monomial content; reduce to a polynomial when division is exact."""
        if self.num.is_zero():
            return RationalExpression(GradedPolynomial.constant(self.num.vars, 0))
        try:
            q = self.num.exact_div(self.den)
            return RationalExpression(q)
        except DivisionError:
            pass
        m = self.den.content_monomial()
        num = self.num.exact_div(m)
        den = self.den.exact_div(m)
        return RationalExpression(num, den)

    def to_poly(self) -> GradedPolynomial:
        """Clear the denominator by exact division (raises DivisionError)."""
        return self.num.exact_div(self.den)

    def eval(self, assignment: Mapping[str, Fraction]) -> Fraction:
        d = self.den.eval(assignment)
        if d == 0:
            raise PoleError(f"denominator {self.den!r} vanishes at {assignment}")
        return self.num.eval(assignment) / d

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def eval_at_point(e: RationalExpression, assignment: Mapping[str, Fraction]) -> Fraction:
    return e.eval(assignment)


def binomial_fraction(alpha: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(alpha, k) for rational alpha."""
    alpha = Fraction(alpha)
    out = Fraction(1)
    for j in range(k):
        out *= (alpha - j)
        out /= (j + 1)
    return out


class TruncatedSeries:
    """Series in one formal variable, coefficients polynomial in auxiliary vars.

    Terms beyond `order` are dropped, never assumed zero; every consumer
    states the order it needs.  `coeffs[k]` is the coefficient of z**k.
    """

    __slots__ = ("variable", "order", "coeffs")

    def __init__(self, variable: str, order: int, coeffs):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.variable = variable
        self.order = order
        coeffs = list(coeffs)[: order + 1]
        if not coeffs:
            raise ValueError("need at least the constant coefficient")
        vars0 = coeffs[0].vars
        while len(coeffs) < order + 1:
            coeffs.append(GradedPolynomial.constant(vars0, 0))
        self.coeffs = coeffs

    @property
    def vars(self):
        return self.coeffs[0].vars

    @classmethod
    def from_poly_coeffs(cls, variable, order, pairs, vars):
        coeffs = [GradedPolynomial.constant(vars, 0) for _ in range(order + 1)]
        for k, p in pairs:
            if 0 <= k <= order:
                coeffs[k] = coeffs[k] + p
        return cls(variable, order, coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.variable, min(order, self.order), self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.variable == other.variable
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        order = min(self.order, other.order)
        return TruncatedSeries(
            self.variable, order,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.variable, self.order, [c * other for c in self.coeffs])
        order = min(self.order, other.order)
        zero = GradedPolynomial.constant(self.vars, 0)
        out = [zero for _ in range(order + 1)]
        for i, a in enumerate(self.coeffs):
            if i > order or a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > order:
                    break
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.variable, order, out)

    __rmul__ = __mul__

    def coefficient(self, k: int) -> GradedPolynomial:
        if k > self.order:
            raise ValueError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]


def series_pow(f: TruncatedSeries, alpha, order: int | None = None) -> TruncatedSeries:
    """Formal binomial power (1+g)**alpha of a series with constant term 1."""
    alpha = Fraction(alpha)
    if order is None:
        order = f.order
    order = min(order, f.order)
    if not f.coeffs[0].is_one():
        raise SeriesBaseError("series_pow requires constant term 1")
    zero = GradedPolynomial.constant(f.vars, 0)
    g = TruncatedSeries(f.variable, order, [zero] + f.coeffs[1:order + 1])
    out = TruncatedSeries(f.variable, order, [GradedPolynomial.constant(f.vars, 1)])
    g_pow = TruncatedSeries(f.variable, order, [GradedPolynomial.constant(f.vars, 1)])
    for k in range(1, order + 1):
        g_pow = g_pow * g
        if all(c.is_zero() for c in g_pow.coeffs):
            break
        out = out + binomial_fraction(alpha, k) * g_pow
    return out


def series_log(f: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """log(1+g) of a series with constant term 1, truncated."""
    if order is None:
        order = f.order
    order = min(order, f.order)
    if not f.coeffs[0].is_one():
        raise SeriesBaseError("series_log requires constant term 1")
    zero = GradedPolynomial.constant(f.vars, 0)
    g = TruncatedSeries(f.variable, order, [zero] + f.coeffs[1:order + 1])
    out = TruncatedSeries(f.variable, order, [zero])
    g_pow = TruncatedSeries(f.variable, order, [GradedPolynomial.constant(f.vars, 1)])
    for k in range(1, order + 1):
        g_pow = g_pow * g
        if all(c.is_zero() for c in g_pow.coeffs):
            break
        out = out + Fraction((-1) ** (k + 1), k) * g_pow
    return out
