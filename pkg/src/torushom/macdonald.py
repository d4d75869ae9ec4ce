"""Two-parameter symmetric polynomials, their pairing, and the operator picture.

Symmetric functions are stored by their coordinates on the monomial basis
m_lambda with coefficients that are rational expressions in (Q, T).  The
pairing is defined on power sums by

    <p_lambda, p_lambda> = z_lambda * prod_i (1 - Q^(lambda_i)) / (1 - T^(lambda_i)),

distinct power sums orthogonal; the two-parameter orthogonal basis
M_lambda is produced by triangular orthogonalization against lower
monomials in dominance order (a fraction-free linear solve), and the
closed product formula for its norm is then a verified property rather
than a definition.

The operator picture lives on Laurent polynomials in x_1..x_N with
coefficients in Q and a formal half power s (T = s^2):

    T_i f = s * (s_i f) + (s - 1/s) * (s_i f - f) / (x_i/x_(i+1) - 1),

with the y-operators built from them and the shift x_1 -> Q x_1.  In this
normalization the generators satisfy (T_i - s)(T_i + 1/s) = 0, which is
the relation asserted by the tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .algebra import DivisionError, GradedPolynomial, RationalExpression
from .tableaux import Partition, partitions_of

QT = ("Q", "T")


def _qt_poly(terms) -> GradedPolynomial:
    return GradedPolynomial(QT, terms)


def _one_minus(var: str, k: int) -> GradedPolynomial:
    e = (k, 0) if var == "Q" else (0, k)
    return _qt_poly({(0, 0): 1, e: -1})


def z_factor(lam: Partition) -> int:
    counts: dict[int, int] = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    z = 1
    for part, mult in counts.items():
        z *= part**mult * factorial(mult)
    return z


# ---------------------------------------------------------------------------
# transition matrices via expansion in d variables


def _expand_powersum(lam: Partition, nvars: int) -> dict:
    """Sparse exponent-dict of prod_i p_(lam_i) in x_1..x_nvars."""
    poly = {(0,) * nvars: 1}
    for part in lam:
        new: dict = {}
        for e, c in poly.items():
            for v in range(nvars):
                ne = list(e)
                ne[v] += part
                key = tuple(ne)
                new[key] = new.get(key, 0) + c
        poly = new
    return poly


@lru_cache(maxsize=None)
def _p_to_m_matrix(d: int):
    """Integer matrix A with p_rho = sum_nu A[rho][nu] m_nu (partitions of d)."""
    parts = partitions_of(d)
    index = {p.parts: i for i, p in enumerate(parts)}
    A = []
    for rho in parts:
        expansion = _expand_powersum(rho, d) if d else {(): 1}
        row = [0] * len(parts)
        for e, c in expansion.items():
            if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
                continue  # not the canonical representative of its orbit
            key = tuple(x for x in e if x)
            row[index[key]] += c
        A.append(row)
    return parts, A


def _invert_rational_matrix(A):
    n = len(A)
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def _m_to_p_matrix(d: int):
    parts, A = _p_to_m_matrix(d)
    return parts, _invert_rational_matrix(A)


def _pair_weight(rho: Partition) -> RationalExpression:
    """z_rho * prod (1 - Q^part)/(1 - T^part)."""
    num = GradedPolynomial.constant(QT, z_factor(rho))
    den = GradedPolynomial.constant(QT, 1)
    for part in rho:
        num = num * _one_minus("Q", part)
        den = den * _one_minus("T", part)
    return RationalExpression(num, den)


class SymFunc:
    """Symmetric function as monomial-basis coordinates (single degree or mixed)."""

    def __init__(self, coords: dict):
        # partition tuple -> RationalExpression over (Q, T)
        self.coords = {k: v for k, v in coords.items() if not v.is_zero()}

    @classmethod
    def monomial_basis(cls, lam: Partition) -> "SymFunc":
        one = RationalExpression(GradedPolynomial.constant(QT, 1))
        return cls({lam.parts: one})

    @classmethod
    def powersum_basis(cls, lam: Partition) -> "SymFunc":
        d = lam.size
        parts, A = _p_to_m_matrix(d)
        idx = {p.parts: i for i, p in enumerate(parts)}
        row = A[idx[lam.parts]]
        out = {}
        for j, pnu in enumerate(parts):
            if row[j]:
                out[pnu.parts] = RationalExpression(
                    GradedPolynomial.constant(QT, row[j])
                )
        return cls(out)

    def __add__(self, other):
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = (out[k] + v) if k in out else v
        return SymFunc(out)

    def scale(self, c: RationalExpression) -> "SymFunc":
        return SymFunc({k: v * c for k, v in self.coords.items()})

    def is_zero(self):
        return not self.coords

    def __repr__(self):
        bits = [f"({v!r})*m{list(k)}" for k, v in sorted(self.coords.items())]
        return " + ".join(bits) if bits else "0"


def _p_coords(coords: dict, d: int):
    """Power-sum coordinates of one homogeneous m-coordinate dictionary."""
    parts, B = _m_to_p_matrix(d)
    idx = {p.parts: i for i, p in enumerate(parts)}
    zero = RationalExpression(GradedPolynomial.constant(QT, 0))
    out = [zero] * len(parts)
    for key, coef in coords.items():
        row = B[idx[key]]
        for r, b in enumerate(row):
            if b:
                out[r] = out[r] + coef * b
    return parts, out


def hall_pairing(f: SymFunc, g: SymFunc) -> RationalExpression:
    """Bilinear two-parameter pairing; distinct degrees are orthogonal."""
    by_deg_f: dict[int, dict] = {}
    by_deg_g: dict[int, dict] = {}
    for k, v in f.coords.items():
        by_deg_f.setdefault(sum(k), {})[k] = v
    for k, v in g.coords.items():
        by_deg_g.setdefault(sum(k), {})[k] = v
    total = RationalExpression(GradedPolynomial.constant(QT, 0))
    for d, fc in by_deg_f.items():
        gc = by_deg_g.get(d)
        if not gc:
            continue
        parts, fp = _p_coords(fc, d)
        _, gp = _p_coords(gc, d)
        for rho, fa, ga in zip(parts, fp, gp):
            if fa.is_zero() or ga.is_zero():
                continue
            total = total + fa * ga * _pair_weight(rho)
    return total.simplify()


def _bareiss_solve(M, rhs):
    """Fraction-free solve of M x = rhs over polynomial entries.

    Returns (numerators, denominator) with x_i = num_i / den exactly.
    """
    n = len(M)
    A = [[M[i][j] for j in range(n)] + [rhs[i]] for i in range(n)]
    one = GradedPolynomial.constant(QT, 1)
    prev = one
    for k in range(n):
        piv = next((i for i in range(k, n) if not A[i][k].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num.exact_div(prev)
            A[i][k] = GradedPolynomial.constant(QT, 0)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    xs = [None] * n
    for i in range(n - 1, -1, -1):
        acc = A[i][n] * det
        for j in range(i + 1, n):
            acc = acc - A[i][j] * xs[j]
        xs[i] = acc.exact_div(A[i][i])
    return xs, det


_macdonald_cache: dict = {}


def macdonald_poly(lam: Partition, limit: int = 8) -> SymFunc:
    """The monic dominance-triangular orthogonal basis element.

    Solved as one square polynomial system in scaled power-sum unknowns:
    orthogonality to every lower monomial function gives rows involving Q
    only, and the vanishing of the monomial coordinates outside the
    dominance cone gives rows involving T only (with the coordinate at
    lambda normalized to one); a fraction-free elimination keeps every
    intermediate entry a genuine polynomial.
    """
    if lam.size > limit:
        raise ValueError(f"|lambda| = {lam.size} above the configured limit {limit}")
    key = lam.parts
    if key in _macdonald_cache:
        return _macdonald_cache[key]
    d = lam.size
    if d == 0:
        out = SymFunc({(): RationalExpression(GradedPolynomial.constant(QT, 1))})
        _macdonald_cache[key] = out
        return out
    parts, A = _p_to_m_matrix(d)
    _, B = _m_to_p_matrix(d)
    idx = {p.parts: i for i, p in enumerate(parts)}
    k = len(parts)

    def tprod(rho):
        out = GradedPolynomial.constant(QT, 1)
        for part in rho:
            out = out * _one_minus("T", part)
        return out

    def qprod(rho):
        out = GradedPolynomial.constant(QT, 1)
        for part in rho:
            out = out * _one_minus("Q", part)
        return out

    tprods = [tprod(rho) for rho in parts]
    qprods = [qprod(rho) for rho in parts]

    rows = []
    rhs = []
    zero = GradedPolynomial.constant(QT, 0)
    one = GradedPolynomial.constant(QT, 1)
    for nu in parts:
        if nu.parts == lam.parts:
            continue
        if lam.dominates(nu):
            # orthogonality to m_nu: sum_rho yhat_rho B[nu][rho] z_rho qprod = 0
            i = idx[nu.parts]
            denom_lcm = 1
            for b in B[i]:
                denom_lcm = denom_lcm * b.denominator // _gcd_int(denom_lcm, b.denominator)
            row = []
            for r, rho in enumerate(parts):
                b = B[i][r] * denom_lcm
                assert b.denominator == 1
                row.append(qprods[r] * Fraction(int(b) * z_factor(rho)))
            rows.append(row)
            rhs.append(zero)
        else:
            # monomial coordinate at nu vanishes
            j = idx[nu.parts]
            rows.append([tprods[r] * A[r][j] if A[r][j] else zero for r in range(k)])
            rhs.append(zero)
    j = idx[lam.parts]
    rows.append([tprods[r] * A[r][j] if A[r][j] else zero for r in range(k)])
    rhs.append(one)
    xs, det = _bareiss_solve(rows, rhs)
    # yhat -> m-coordinates: coeff of m_sigma = sum_rho yhat_rho tprod_rho A[rho][sigma] / det
    coords = {}
    for s, sigma in enumerate(parts):
        num = GradedPolynomial.constant(QT, 0)
        for r in range(k):
            if A[r][s]:
                num = num + xs[r] * tprods[r] * A[r][s]
        if num.is_zero():
            continue
        coords[sigma.parts] = RationalExpression(num, det).simplify()
    out = SymFunc(coords)
    assert coords.get(lam.parts) == RationalExpression(one), "leading coefficient must be 1"
    _macdonald_cache[key] = out
    return out


def _gcd_int(a, b):
    from math import gcd as _g

    return _g(int(a), int(b))


def macdonald_norm(lam: Partition) -> RationalExpression:
    """Closed product over boxes for <M_lambda, M_lambda>."""
    num = GradedPolynomial.constant(QT, 1)
    den = GradedPolynomial.constant(QT, 1)
    for r, c in lam.boxes():
        a = lam.arm(r, c)
        l = lam.leg(r, c)
        num = num * _qt_poly({(0, 0): 1, (a + 1, l): -1})
        den = den * _qt_poly({(0, 0): 1, (a, l + 1): -1})
    return RationalExpression(num, den)


# ---------------------------------------------------------------------------
# principal specializations and S/T matrices (formal half power s, T = s^2)

QS = ("Q", "s")


def principal_eval(lam: Partition, N: int, mu: Partition | None = None) -> RationalExpression:
    """M_lambda at x_i = T^(rho_i) Q^(mu_i), rho_i = (N + 1 - 2i)/2."""
    if mu is None:
        mu = Partition(())
    if len(lam) > N:
        return RationalExpression(GradedPolynomial.constant(QS, 0))
    if len(mu) > N:
        raise ValueError("mu has more rows than variables")
    M = macdonald_poly(lam)
    mu_full = list(mu.parts) + [0] * (N - len(mu))
    total = RationalExpression(GradedPolynomial.constant(QS, 0))
    for nu_parts, coef in M.coords.items():
        if len(nu_parts) > N:
            continue
        nu_full = tuple(list(nu_parts) + [0] * (N - len(nu_parts)))
        acc = GradedPolynomial.constant(QS, 0)
        for perm in set(permutations(nu_full)):
            qe = 0
            se = 0
            for i, e in enumerate(perm, start=1):
                qe += mu_full[i - 1] * e
                se += (N + 1 - 2 * i) * e
            acc = acc + GradedPolynomial.monomial(QS, (qe, se))
        total = total + _lift_qt_to_qs(coef) * RationalExpression(acc)
    return total.simplify()


def _lift_qt_to_qs(e: RationalExpression) -> RationalExpression:
    """Coefficient field embedding T -> s^2."""
    return RationalExpression(_qt_to_qs_poly(e.num), _qt_to_qs_poly(e.den))


def _qt_to_qs_poly(p: GradedPolynomial) -> GradedPolynomial:
    out = GradedPolynomial(QS)
    out.terms = {(eq, 2 * et): c for (eq, et), c in p.terms.items()}
    return out


def refined_ST(N: int, cutoff: int):
    """(labels, S up to its 00-entry, T diagonal) for partitions in an N x cutoff box."""
    labels = [Partition(())]
    for d in range(1, N * cutoff + 1):
        for p in partitions_of(d):
            if len(p) <= N and (p.parts and p.parts[0] <= cutoff):
                labels.append(p)
    S = [[principal_eval(lam, N, mu) for mu in labels] for lam in labels]
    Tdiag = []
    for lam in labels:
        qexp = sum(x * (x - 1) for x in lam.parts) // 2
        sexp = 2 * sum(x * (i - 1) for i, x in enumerate(lam.parts, start=1))
        Tdiag.append(GradedPolynomial.monomial(QS, (qexp, sexp)))
    return labels, S, Tdiag


def evaluation_sub(f: GradedPolynomial, N: int) -> GradedPolynomial:
    """Substitute x_i -> T^(-rho_i) = s^(2i - N - 1) into a Laurent function."""
    images = {}
    for i in range(1, N + 1):
        images[f"x{i}"] = GradedPolynomial.monomial(QS, (0, 2 * i - N - 1))
    return f.substitute_monomials(images)


# ---------------------------------------------------------------------------
# Demazure-Lusztig operators on Laurent polynomials


def dl_vars(N: int) -> tuple[str, ...]:
    return ("Q", "s") + tuple(f"x{i}" for i in range(1, N + 1))


def _swap_x(f: GradedPolynomial, N: int, i: int) -> GradedPolynomial:
    vars = f.vars
    a = vars.index(f"x{i}")
    b = vars.index(f"x{i+1}")
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[a], ne[b] = ne[b], ne[a]
        out[tuple(ne)] = c
    p = GradedPolynomial(vars)
    p.terms = out
    return p


def dl_T(f: GradedPolynomial, N: int, i: int, inverse: bool = False) -> GradedPolynomial:
    """Demazure-Lusztig generator (or its inverse) acting on a Laurent polynomial."""
    if not 1 <= i <= N - 1:
        raise IndexError(f"generator index {i} out of 1..{N-1}")
    vars = f.vars
    s = GradedPolynomial.var(vars, "s")
    s_inv = GradedPolynomial.var(vars, "s", -1)
    sf = _swap_x(f, N, i)
    num = (sf - f) * GradedPolynomial.var(vars, f"x{i+1}")
    den = GradedPolynomial.var(vars, f"x{i}") - GradedPolynomial.var(vars, f"x{i+1}")
    dd = num.exact_div(den) if not num.is_zero() else num
    out = s * sf + (s - s_inv) * dd
    if inverse:
        out = out - (s - s_inv) * f
    return out


def dl_shift1(f: GradedPolynomial, N: int) -> GradedPolynomial:
    """x_1 -> Q x_1."""
    vars = f.vars
    qi = vars.index("Q")
    xi = vars.index("x1")
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[qi] += e[xi]
        out[tuple(ne)] = c
    p = GradedPolynomial(vars)
    p.terms = out
    return p


def dl_sigma(f: GradedPolynomial, N: int) -> GradedPolynomial:
    """The rotation s_(N-1)...s_1 composed after the Q-shift of x_1."""
    out = dl_shift1(f, N)
    for i in range(1, N):
        out = _swap_x(out, N, i)
    return out


def dl_Y(f: GradedPolynomial, N: int, i: int) -> GradedPolynomial:
    """Y_i = T_i ... T_(N-1) sigma T_1^(-1) ... T_(i-1)^(-1), applied to f."""
    for j in range(i - 1, 0, -1):
        f = dl_T(f, N, j, inverse=True)
    f = dl_sigma(f, N)
    for j in range(N - 1, i - 1, -1):
        f = dl_T(f, N, j)
    return f


def dl_apply(word, f: GradedPolynomial, N: int) -> GradedPolynomial:
    """Apply an operator word left-to-right: "T1", "T2^-1", "X3", "Y1"."""
    for op in word:
        if op.startswith("T"):
            inv = op.endswith("^-1")
            idx = int(op[1:-3] if inv else op[1:])
            f = dl_T(f, N, idx, inverse=inv)
        elif op.startswith("X"):
            idx = int(op[1:])
            f = f * GradedPolynomial.var(f.vars, f"x{idx}")
        elif op.startswith("Y"):
            idx = int(op[1:])
            f = dl_Y(f, N, idx)
        else:
            raise ValueError(f"unknown operator {op!r}")
    return f


def macdonald_as_laurent(lam: Partition, N: int) -> GradedPolynomial:
    """M_lambda in x_1..x_N with denominators cleared (eigen-tests only)."""
    M = macdonald_poly(lam)
    vars = dl_vars(N)
    den_all = GradedPolynomial.constant(QT, 1)
    for coef in M.coords.values():
        den_all = den_all * coef.den
    out = GradedPolynomial.constant(vars, 0)
    for nu_parts, coef in M.coords.items():
        if len(nu_parts) > N:
            continue
        scale = coef.num * den_all.exact_div(coef.den)
        scale_qs = _qt_to_qs_poly(scale).extend(vars)
        nu_full = tuple(list(nu_parts) + [0] * (N - len(nu_parts)))
        mono_sum = GradedPolynomial.constant(vars, 0)
        for perm in set(permutations(nu_full)):
            exp = [0, 0] + list(perm)
            mono_sum = mono_sum + GradedPolynomial.monomial(vars, exp)
        out = out + scale_qs * mono_sum
    return out


def y_eigenvalue(lam: Partition, N: int) -> GradedPolynomial:
    """Eigenvalue of e_1(Y) on M_lambda: sum_i T^(rho_i) Q^(lambda_i)."""
    out = GradedPolynomial.constant(QS, 0)
    lam_full = list(lam.parts) + [0] * (N - len(lam))
    for i in range(1, N + 1):
        out = out + GradedPolynomial.monomial(QS, (lam_full[i - 1], N + 1 - 2 * i))
    return out


# ---------------------------------------------------------------------------
# Schur oracle and the T = Q specialization


def schur_poly(lam: Partition, N: int) -> GradedPolynomial:
    """Bialternant ratio in x_1..x_N (exact division by the Vandermonde)."""
    vars = tuple(f"x{i}" for i in range(1, N + 1))
    lam_full = list(lam.parts) + [0] * (N - len(lam))
    if len(lam) > N:
        return GradedPolynomial.constant(vars, 0)

    def alternant(expos):
        total = GradedPolynomial.constant(vars, 0)
        for perm in permutations(range(N)):
            sign = 1
            seen = list(perm)
            # parity via inversion count
            inv = sum(
                1 for i in range(N) for j in range(i + 1, N) if seen[i] > seen[j]
            )
            sign = -1 if inv % 2 else 1
            exp = [0] * N
            for row, col in enumerate(perm):
                exp[col] = expos[row]
            total = total + GradedPolynomial.monomial(vars, exp, sign)
        return total

    num = alternant([lam_full[i] + N - 1 - i for i in range(N)])
    den = alternant([N - 1 - i for i in range(N)])
    return num.exact_div(den)


def specialize_q_equals_t(e: RationalExpression) -> RationalExpression:
    """Substitute Q = T, cancelling common (Q - T) factors first."""
    num, den = e.num, e.den
    qmt = _qt_poly({(1, 0): 1, (0, 1): -1})

    def sub(p: GradedPolynomial) -> GradedPolynomial:
        out = GradedPolynomial(("T",))
        terms: dict = {}
        for (eq, et), c in p.terms.items():
            k = (eq + et,)
            terms[k] = terms.get(k, Fraction(0)) + c
        out.terms = {k: c for k, c in terms.items() if c}
        return out

    while sub(den).is_zero():
        try:
            den = den.exact_div(qmt)
            num = num.exact_div(qmt)
        except DivisionError as exc:
            raise ZeroDivisionError("pole at Q = T does not cancel") from exc
    return RationalExpression(sub(num), sub(den))


def macdonald_at_q_equals_t(lam: Partition, N: int) -> GradedPolynomial:
    """M_lambda at Q = T expanded in x_1..x_N (should be the Schur function)."""
    M = macdonald_poly(lam)
    vars = tuple(f"x{i}" for i in range(1, N + 1))
    out = GradedPolynomial.constant(vars, 0)
    for nu_parts, coef in M.coords.items():
        if len(nu_parts) > N:
            continue
        c = specialize_q_equals_t(coef)
        cpoly = c.to_poly()
        if cpoly.terms and any(e != (0,) for e in cpoly.terms):
            raise ValueError("specialized coefficient is not a constant")
        cval = cpoly.constant_term()
        nu_full = tuple(list(nu_parts) + [0] * (N - len(nu_parts)))
        for perm in set(permutations(nu_full)):
            out = out + GradedPolynomial.monomial(vars, list(perm), cval)
    return out
