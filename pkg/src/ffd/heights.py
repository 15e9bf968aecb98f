"""Polynomials in X over F_q[T]: heights, inseparable degree, resultants,
and exact checkers for the lower bounds on |P(beta)| and |alpha - beta|.

Every comparison is carried out on exact q-exponents; fractional exponents
such as n/u are Fractions and inequalities are decided by cross
multiplication.  A checker either certifies both sides or raises
PrecisionError; it never guesses.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import PreconditionError, PrecisionError
from .gf import AbsValue, Fq, NEG_INF, Poly, poly_gcd, poly_exact_sqrt, format_poly
from .laurent import LaurentSeries, quadratic_roots, rational_reconstruct, series_from_rational


class XPoly:
    """Polynomial in X with coefficients in F_q[T], ascending by X-power."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Fq, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_polys(cls, coeffs) -> "XPoly":
        if not coeffs:
            raise PreconditionError("empty coefficient list")
        return cls(coeffs[0].field, coeffs)

    @classmethod
    def quadratic(cls, A: Poly, B: Poly, C: Poly) -> "XPoly":
        return cls(A.field, (C, B, A))

    @classmethod
    def linear(cls, g: Poly, f: Poly) -> "XPoly":
        """g*X - f."""
        return cls(g.field, (-f, g))

    @classmethod
    def constant(cls, c: Poly) -> "XPoly":
        return cls(c.field, (c,))

    # -- structure --------------------------------------------------------------

    @property
    def degx(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Poly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Poly.zero(self.field)

    def lead(self) -> Poly:
        if self.is_zero:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def height(self) -> AbsValue:
        if self.is_zero:
            raise PreconditionError("height of the zero polynomial")
        return AbsValue(False, max(c.degree for c in self.coeffs if not c.is_zero))

    def content(self) -> Poly:
        nz = [c for c in self.coeffs if not c.is_zero]
        if not nz:
            raise PreconditionError("content of the zero polynomial")
        g = nz[0]
        for c in nz[1:]:
            g = poly_gcd(g, c)
            if g.degree == 0:
                break
        return g.monic()

    def primitive_min(self) -> "XPoly":
        """Divide out the content and scale so the leading coefficient is monic."""
        c = self.content()
        polys = [p // c for p in self.coeffs] if c.degree > 0 else list(self.coeffs)
        lam = polys[-1].lc()
        if lam != 1:
            inv = self.field.inv(lam)
            polys = [p.scale(inv) for p in polys]
        return XPoly(self.field, polys)

    @property
    def is_min_form(self) -> bool:
        if self.is_zero or self.degx == 0:
            return False
        return self.content().degree == 0 and self.lead().is_monic

    def insep_degree(self) -> int:
        """Largest power p^k such that the polynomial is a polynomial in X^(p^k)."""
        exps = [i for i, c in enumerate(self.coeffs) if i > 0 and not c.is_zero]
        if not exps:
            return 1
        g = 0
        for i in exps:
            g = gcd(g, i)
        p, out = self.field.p, 1
        while g % p == 0:
            out *= p
            g //= p
        return out

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "XPoly") -> "XPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "XPoly":
        return XPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other: "XPoly") -> "XPoly":
        if self.is_zero or other.is_zero:
            return XPoly(self.field, ())
        out = [Poly.zero(self.field) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return XPoly(self.field, out)

    def scale_poly(self, c: Poly) -> "XPoly":
        return XPoly(self.field, [p * c for p in self.coeffs])

    def shift_x(self, a0: Poly) -> "XPoly":
        """Substitute X -> X - a0."""
        F = self.field
        out = XPoly(F, ())
        xm = XPoly(F, (Poly.one(F),))
        base = XPoly(F, (-a0, Poly.one(F)))
        for c in self.coeffs:
            out = out + xm.scale_poly(c)
            xm = xm * base
        return out

    def derivative_x(self) -> "XPoly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(self.coeffs[i].scale(F.from_int(i)))
        return XPoly(F, out)

    # -- evaluation ------------------------------------------------------------------

    def evaluate_series(self, xi: LaurentSeries) -> LaurentSeries:
        acc = LaurentSeries.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * xi + LaurentSeries.from_poly(c)
        return acc

    def evaluate_rational(self, f: Poly, g: Poly):
        """(numerator, denominator) of P(f/g) with denominator g^degx, exact."""
        if g.is_zero:
            raise PreconditionError("zero denominator")
        m = self.degx if self.coeffs else 0
        num = Poly.zero(self.field)
        fp = Poly.one(self.field)
        gps = [Poly.one(self.field)]
        for _ in range(m):
            gps.append(gps[-1] * g)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                num = num + c * fp * gps[m - i]
            fp = fp * f
        return num, gps[m]

    # -- identity -----------------------------------------------------------------------

    def sort_key(self):
        return (len(self.coeffs), tuple(c.sort_key() for c in self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, XPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        return format_xpoly(self)

    def __repr__(self):
        return f"XPoly({format_xpoly(self)!r})"

    def to_json(self):
        return [list(c.coeffs) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: Fq, data) -> "XPoly":
        return cls(field, [Poly.from_json(field, c) for c in data])


def format_xpoly(P: XPoly) -> str:
    if P.is_zero:
        return "0"
    parts = []
    for i in range(len(P.coeffs) - 1, -1, -1):
        c = P.coeffs[i]
        if c.is_zero:
            continue
        cs = format_poly(c)
        if "+" in cs or (len(cs) > 1 and not cs.isdigit()):
            cs = f"({cs})"
        if i == 0:
            parts.append(cs)
        elif i == 1:
            parts.append(f"{cs}*X" if cs != "1" else "X")
        else:
            parts.append(f"{cs}*X^{i}" if cs != "1" else f"X^{i}")
    return "+".join(parts)


# -- resultants -------------------------------------------------------------------------


def resultant(P: XPoly, Q: XPoly) -> Poly:
    """Sylvester-matrix determinant of P and Q over F_q[T] (Bareiss elimination)."""
    if P.is_zero or Q.is_zero:
        raise PreconditionError("resultant of a zero polynomial")
    F = P.field
    m, n = P.degx, Q.degx
    if m == 0 and n == 0:
        return Poly.one(F)
    if m == 0:
        return P.coeffs[0] ** n
    if n == 0:
        return Q.coeffs[0] ** m
    size = m + n
    rows = []
    prow = [P.coeff(m - j) for j in range(m + 1)]
    qrow = [Q.coeff(n - j) for j in range(n + 1)]
    for i in range(n):
        rows.append([Poly.zero(F)] * i + prow + [Poly.zero(F)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Poly.zero(F)] * i + qrow + [Poly.zero(F)] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(rows):
    F = rows[0][0].field if rows else None
    n = len(rows)
    sign = 1
    prev = Poly.one(F)
    for k in range(n - 1):
        if rows[k][k].is_zero:
            for i in range(k + 1, n):
                if not rows[i][k].is_zero:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(F)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                q, r = divmod(num, prev)
                assert r.is_zero
                rows[i][j] = q
            rows[i][k] = Poly.zero(F)
        prev = rows[k][k]
    det = rows[n - 1][n - 1]
    return det if sign == 1 else -det


def discriminant(P: XPoly) -> Poly:
    """Discriminant over F_q[T]; for a quadratic this is B^2 - 4AC (B^2 in
    characteristic 2, where the formula specialises)."""
    F = P.field
    n = P.degx
    if P.is_zero or n is NEG_INF or n < 1:
        raise PreconditionError("discriminant needs degree >= 1")
    if n == 1:
        return Poly.one(F)
    if n == 2:
        A, B, C = P.coeff(2), P.coeff(1), P.coeff(0)
        return B * B - Poly.from_ints(F, (4,)) * A * C
    Pd = P.derivative_x()
    if Pd.is_zero:
        return Poly.zero(F)
    res = resultant(P, Pd)
    q, r = divmod(res, P.lead())
    if not r.is_zero:
        raise PreconditionError("discriminant is not integral (inseparable leading part)")
    if (n * (n - 1) // 2) % 2 and F.p != 2:
        q = -q
    return q


# -- irreducibility (degree <= 2) ----------------------------------------------------------


def is_irreducible_quadratic(P: XPoly) -> bool:
    """Exact irreducibility over F_q(T) for a degree-2 polynomial."""
    if P.degx != 2:
        raise PreconditionError("expected a degree-2 polynomial")
    W = P.primitive_min()
    A, B, C = W.coeff(2), W.coeff(1), W.coeff(0)
    F = P.field
    if C.is_zero:
        return False
    if F.p != 2:
        D = discriminant(W)
        return poly_exact_sqrt(D) is None
    if B.is_zero:
        return poly_exact_sqrt(C * A) is None
    K = 2 * (A.degree + max(C.degree, B.degree, 1)) + 12
    for xi in quadratic_roots(A, B, C, K):
        if xi.is_zero:
            continue
        for f, g in rational_reconstruct(xi, A.degree):
            if (A * f * f + B * f * g + C * g * g).is_zero:
                return False
    return True


def minpoly_conjugate_gap(P: XPoly):
    """|alpha - alpha'| for the roots of a quadratic; None when they coincide.

    In odd characteristic this is |B^2-4AC|^(1/2)/|A|; in characteristic 2 a
    separable quadratic gives |B|/|A|, and B = 0 means the roots coincide.
    """
    if P.degx != 2:
        raise PreconditionError("quadratic polynomial required")
    A, B = P.coeff(2), P.coeff(1)
    if P.field.p == 2:
        if B.is_zero:
            return None
        return AbsValue(False, B.degree - A.degree)
    D = discriminant(P)
    if D.is_zero:
        return None
    if D.degree % 2:
        raise PreconditionError("conjugate difference lies outside F_q((1/T))")
    return AbsValue(False, D.degree // 2 - A.degree)


def xpoly_pseudo_divisible(P: XPoly, M: XPoly) -> bool:
    """Whether M divides P over F_q(T)[X] (pseudo-remainder test)."""
    if M.is_zero:
        raise PreconditionError("division by the zero polynomial")
    R = P
    lead = M.lead()
    dM = M.degx
    while not R.is_zero and R.degx >= dM:
        shift = R.degx - dM
        Rl = R.lead()
        R = R.scale_poly(lead) - XPoly(
            M.field, [Poly.zero(M.field)] * shift + [Rl * c for c in M.coeffs])
    return R.is_zero


# -- algebraic numbers of degree <= 2 -----------------------------------------------------


class AlgebraicNumber:
    """A root of a canonical minimal polynomial, with a series-prefix selector.

    Rational numbers carry an exact (numerator, denominator) pair; quadratic
    numbers carry a short certified prefix that distinguishes the root from
    its conjugate.
    """

    __slots__ = ("minpoly", "rational", "prefix", "_cache")

    def __init__(self, minpoly: XPoly, rational=None, prefix=None):
        self.minpoly = minpoly
        self.rational = rational
        self.prefix = prefix
        self._cache = None

    @classmethod
    def from_rational(cls, f: Poly, g: Poly) -> "AlgebraicNumber":
        if g.is_zero:
            raise PreconditionError("zero denominator")
        d = poly_gcd(f, g) if not f.is_zero else g.monic()
        f, g = f // d, g // d
        lam = g.lc()
        if lam != 1:
            inv = g.field.inv(lam)
            f, g = f.scale(inv), g.scale(inv)
        return cls(XPoly.linear(g, f), rational=(f, g))

    @classmethod
    def from_quadratic_root(cls, minpoly: XPoly, root: LaurentSeries,
                            other=None) -> "AlgebraicNumber":
        if other is not None:
            d = root.first_difference(other)
            if d is None:
                raise PrecisionError("roots not distinguishable at this precision")
            upto = d + 1
        else:
            upto = (root.ord + 1) if root.coeffs else root.prec
        prefix = root.truncate(max(upto, root.ord + 1 if root.coeffs else upto))
        num = cls(minpoly, prefix=prefix)
        num._cache = root
        return num

    # -- basic invariants ---------------------------------------------------------

    @property
    def field(self) -> Fq:
        return self.minpoly.field

    @property
    def degree(self) -> int:
        return self.minpoly.degx

    @property
    def insep(self) -> int:
        return self.minpoly.insep_degree()

    def height(self) -> AbsValue:
        return self.minpoly.height()

    def abs_value(self) -> AbsValue:
        if self.rational is not None:
            f, g = self.rational
            if f.is_zero:
                return AbsValue.null()
            return AbsValue(False, f.degree - g.degree)
        return self.prefix.abs_value()

    def max1_exponent(self) -> int:
        """Exponent of max(1, |alpha|)."""
        a = self.abs_value()
        return 0 if a.zero else max(0, a.exponent)

    # -- series access -------------------------------------------------------------

    def series(self, K: int) -> LaurentSeries:
        if self.rational is not None:
            f, g = self.rational
            return series_from_rational(f, g, K)
        if self._cache is not None and (self._cache.exact or self._cache.prec >= K):
            return self._cache.truncate(K)
        A, B, C = (self.minpoly.coeff(2), self.minpoly.coeff(1), self.minpoly.coeff(0))
        roots = quadratic_roots(A, B, C, K)
        match = [r for r in roots if r.first_difference(self.prefix) is None]
        if len(match) != 1:
            raise PrecisionError("root selector prefix does not identify a unique root")
        self._cache = match[0]
        return match[0]

    def conjugate(self):
        """The other root of the minimal polynomial, or None when inseparable."""
        if self.degree == 1:
            return None
        if self.insep > 1:
            return None
        K = max(self.prefix.prec + 4, 2 * (self.height().exponent + 2))
        A, B, C = (self.minpoly.coeff(2), self.minpoly.coeff(1), self.minpoly.coeff(0))
        roots = quadratic_roots(A, B, C, K)
        others = [r for r in roots if r.first_difference(self.prefix) is not None]
        if len(others) != 1:
            raise PrecisionError("conjugate not identified at this precision")
        return AlgebraicNumber.from_quadratic_root(self.minpoly, others[0],
                                                   other=self.series(K))

    def conjugate_gap(self):
        """|alpha - alpha'| as an AbsValue, or None when the conjugate is alpha itself."""
        if self.degree == 1:
            raise PreconditionError("rational numbers have no quadratic conjugate")
        return minpoly_conjugate_gap(self.minpoly)

    def key(self):
        if self.rational is not None:
            return ("rat", self.rational[0].coeffs, self.rational[1].coeffs)
        return ("quad", self.minpoly.sort_key(), self.prefix.ord, self.prefix.coeffs)

    def __eq__(self, other):
        return isinstance(other, AlgebraicNumber) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        if self.rational is not None:
            f, g = self.rational
            return f"({format_poly(f)})/({format_poly(g)})"
        return f"root({format_xpoly(self.minpoly)}; {self.prefix})"


# -- exact distances and values ---------------------------------------------------------


def distance_exponent(a: AlgebraicNumber, b: AlgebraicNumber, floor_exp: int) -> int:
    """Exponent of |a - b|, certified down to q^floor_exp.

    Raises PrecisionError when the two numbers agree beyond the certified
    window (callers treat that as a would-be counterexample and escalate).
    """
    if a.key() == b.key():
        raise PreconditionError("distance between equal numbers")
    if a.rational is not None and b.rational is not None:
        fa, ga = a.rational
        fb, gb = b.rational
        num = fa * gb - fb * ga
        if num.is_zero:
            raise PreconditionError("distance between equal rationals")
        return num.degree - ga.degree - gb.degree
    if a.minpoly == b.minpoly and a.rational is None and b.rational is None:
        gap = a.conjugate_gap()
        if gap is None:
            raise PreconditionError("inseparable: the two roots coincide")
        return gap.exponent
    depth = -floor_exp + 6
    for K in (depth, 2 * depth, 4 * depth):
        d = a.series(K).first_difference(b.series(K))
        if d is not None:
            return -d
    raise PrecisionError(
        f"|a-b| smaller than q^{floor_exp}; agreement beyond the certified window")


def poly_value_exponent(P: XPoly, b: AlgebraicNumber, floor_exp: int):
    """Exponent of |P(b)| (or None when P(b) = 0 exactly), certified to q^floor_exp."""
    if b.rational is not None:
        f, g = b.rational
        num, den = P.evaluate_rational(f, g)
        if num.is_zero:
            return None
        return num.degree - den.degree
    if xpoly_pseudo_divisible(P, b.minpoly):
        return None
    depth = -floor_exp + 6
    for K in (depth, 2 * depth, 4 * depth):
        val = P.evaluate_series(b.series(K + max(0, -b.series(8).ord) * max(P.degx, 1)))
        if not val.is_zero:
            return -val.ord
    raise PrecisionError(
        f"|P(b)| smaller than q^{floor_exp}; evaluation vanished through the window")


# -- the inequality checkers ---------------------------------------------------------------


@dataclass
class LiouvilleReport:
    case: str
    ids: str
    lhs: Fraction
    rhs: Fraction
    holds: bool
    note: str = ""

    def csv_row(self):
        return [self.case, self.ids, self.lhs.numerator, self.lhs.denominator,
                self.rhs.numerator, self.rhs.denominator, self.holds]


CSV_HEADER = ["case", "ids", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "holds"]


def check_poly_value(P: XPoly, Q: XPoly, beta: AlgebraicNumber, u=None) -> LiouvilleReport:
    """|P(beta)| >= max(1,|beta|)^m H(P)^(1-n/u) H(Q)^(-m/u) for beta a root of
    Q of order u with P(beta) != 0."""
    if P.is_zero or P.degx < 1 or Q.is_zero or Q.degx < 1:
        raise PreconditionError("both polynomials must be non-constant")
    if u is None:
        u = beta.insep
    m, n = P.degx, Q.degx
    hP, hQ = P.height().exponent, Q.height().exponent
    rhs = Fraction(m * beta.max1_exponent()) - (Fraction(n, u) - 1) * hP - Fraction(m, u) * hQ
    floor = int(rhs) - 2
    lhs_exp = poly_value_exponent(P, beta, floor)
    if lhs_exp is None:
        raise PreconditionError("P(beta) = 0: hypothesis violated")
    lhs = Fraction(lhs_exp)
    return LiouvilleReport("poly_value", f"{P}|{Q}|{beta}", lhs, rhs, lhs >= rhs)


def check_root_distance(P: XPoly, alpha: AlgebraicNumber, Q: XPoly,
                        beta: AlgebraicNumber, t=None, u=None) -> LiouvilleReport:
    """|alpha-beta| >= max(1,|alpha|) max(1,|beta|) H(P)^(-n/tu) H(Q)^(-m/tu)."""
    if alpha.key() == beta.key():
        raise PreconditionError("alpha and beta must be distinct")
    t = alpha.insep if t is None else t
    u = beta.insep if u is None else u
    m, n = P.degx, Q.degx
    hP, hQ = P.height().exponent, Q.height().exponent
    rhs = (Fraction(alpha.max1_exponent() + beta.max1_exponent())
           - Fraction(n, t * u) * hP - Fraction(m, t * u) * hQ)
    lhs = Fraction(distance_exponent(alpha, beta, int(rhs) - 2))
    return LiouvilleReport("root_distance", f"{alpha}|{beta}", lhs, rhs, lhs >= rhs)


def check_equal_poly_roots(P: XPoly, alpha: AlgebraicNumber,
                           beta: AlgebraicNumber) -> LiouvilleReport:
    """|alpha-beta| >= H(P)^(-n/f^2 + 1/f) for distinct roots of an irreducible P."""
    n = P.degx
    if n < 2:
        raise PreconditionError("degree >= 2 required")
    f = P.insep_degree()
    hP = P.height().exponent
    rhs = -(Fraction(n, f * f) - Fraction(1, f)) * hP
    lhs = Fraction(distance_exponent(alpha, beta, int(rhs) - 2))
    return LiouvilleReport("equal_poly_roots", f"{P}", lhs, rhs, lhs >= rhs)


def check_algebraic_pair(alpha: AlgebraicNumber, beta: AlgebraicNumber) -> LiouvilleReport:
    """|alpha-beta| >= max(1,|alpha|) max(1,|beta|) H(alpha)^(-n/fg) H(beta)^(-m/fg)."""
    if alpha.key() == beta.key():
        raise PreconditionError("alpha and beta must be distinct")
    m, n = alpha.degree, beta.degree
    f, g = alpha.insep, beta.insep
    rhs = (Fraction(alpha.max1_exponent() + beta.max1_exponent())
           - Fraction(n, f * g) * alpha.height().exponent
           - Fraction(m, f * g) * beta.height().exponent)
    lhs = Fraction(distance_exponent(alpha, beta, int(rhs) - 2))
    return LiouvilleReport("algebraic_pair", f"{alpha}|{beta}", lhs, rhs, lhs >= rhs)


def check_conjugate_gap(alpha: AlgebraicNumber) -> LiouvilleReport:
    """H(alpha)^(-1) <= |alpha - alpha'| <= H(alpha) for separable quadratics."""
    if alpha.degree != 2:
        raise PreconditionError("quadratic number required")
    gap = alpha.conjugate_gap()
    if gap is None:
        raise PreconditionError("alpha equals its conjugate (inseparable)")
    h = alpha.height().exponent
    lhs = Fraction(gap.exponent)
    holds = -h <= gap.exponent <= h
    return LiouvilleReport("conjugate_gap", f"{alpha}", lhs, Fraction(h), holds,
                           note="two-sided")


def check_quadratic_pair(alpha: AlgebraicNumber, beta: AlgebraicNumber) -> LiouvilleReport:
    """|alpha-beta| >= max(1, |alpha-alpha'|^-1) H(alpha)^-2 H(beta)^-2 for
    quadratics with separable alpha and distinct minimal polynomials."""
    if alpha.degree != 2 or beta.degree != 2:
        raise PreconditionError("two quadratic numbers required")
    if alpha.minpoly == beta.minpoly:
        raise PreconditionError("distinct minimal polynomials required")
    gap = alpha.conjugate_gap()
    if gap is None:
        raise PreconditionError("alpha equals its conjugate (inseparable)")
    rhs = Fraction(max(0, -gap.exponent)
                   - 2 * alpha.height().exponent - 2 * beta.height().exponent)
    lhs = Fraction(distance_exponent(alpha, beta, int(rhs) - 2))
    return LiouvilleReport("quadratic_pair", f"{alpha}|{beta}", lhs, rhs, lhs >= rhs)


_CASES = {
    "poly_value": check_poly_value,
    "root_distance": check_root_distance,
    "equal_poly_roots": check_equal_poly_roots,
    "algebraic_pair": check_algebraic_pair,
    "conjugate_gap": check_conjugate_gap,
    "quadratic_pair": check_quadratic_pair,
}


def check_liouville(case: str, *args, **kwargs) -> LiouvilleReport:
    if case not in _CASES:
        raise PreconditionError(f"unknown case {case!r}; one of {sorted(_CASES)}")
    return _CASES[case](*args, **kwargs)


# -- enumeration of canonical minimal polynomials -------------------------------------------


def _polys_up_to(field: Fq, deg: int, monic: bool):
    """All polynomials of degree <= deg (monic: exactly the monic ones, any degree <= deg)."""
    out = []
    if not monic:
        out.append(Poly.zero(field))
    for d in range(deg + 1):
        for tail in itertools.product(range(field.q), repeat=d):
            if monic:
                out.append(Poly(field, tail + (1,)))
            else:
                for lc in range(1, field.q):
                    out.append(Poly(field, tail + (lc,)))
    return out


def enumerate_min_linears(field: Fq, h: int):
    """Canonical degree-1 minimal polynomials gX - f with H <= q^h."""
    out = []
    gs = _polys_up_to(field, h, monic=True)
    fs = _polys_up_to(field, h, monic=False)
    for g in gs:
        for f in fs:
            if f.is_zero:
                if g == Poly.one(field):
                    out.append(XPoly.linear(g, f))
                continue
            if poly_gcd(f, g).degree == 0:
                out.append(XPoly.linear(g, f))
    return out


_QUAD_CACHE: dict = {}


def enumerate_min_quadratics(field: Fq, h: int):
    """Canonical irreducible quadratics A X^2 + B X + C with H <= q^h (A monic)."""
    key = (field, h)
    if key in _QUAD_CACHE:
        return _QUAD_CACHE[key]
    out = []
    As = _polys_up_to(field, h, monic=True)
    Bs = _polys_up_to(field, h, monic=False)
    Cs = [c for c in _polys_up_to(field, h, monic=False) if not c.is_zero]
    one = Poly.one(field)
    for A in As:
        for B in Bs:
            gAB = A if B.is_zero else poly_gcd(A, B)
            for C in Cs:
                if gAB.degree > 0 and poly_gcd(gAB, C).degree > 0:
                    continue
                P = XPoly.quadratic(A, B, C)
                if is_irreducible_quadratic(P):
                    out.append(P)
    _QUAD_CACHE[key] = out
    return out


_ROOT_CACHE: dict = {}


def roots_of_min_quadratic(P: XPoly, K: int):
    """AlgebraicNumbers for the roots of P in F_q((1/T)), cached."""
    key = (P, K)
    if key in _ROOT_CACHE:
        return _ROOT_CACHE[key]
    A, B, C = P.coeff(2), P.coeff(1), P.coeff(0)
    roots = quadratic_roots(A, B, C, K)
    out = []
    if len(roots) == 1:
        out.append(AlgebraicNumber.from_quadratic_root(P, roots[0]))
    elif len(roots) == 2:
        out.append(AlgebraicNumber.from_quadratic_root(P, roots[0], other=roots[1]))
        out.append(AlgebraicNumber.from_quadratic_root(P, roots[1], other=roots[0]))
    _ROOT_CACHE[key] = out
    return out


# -- exhaustive and randomised inequality sweeps ---------------------------------------------


def _root_window(alpha: AlgebraicNumber, lo: int, hi: int):
    ser = alpha.series(hi + 1)
    return tuple(ser.coeff(n) for n in range(lo, hi))


def liouville_sweep(field: Fq, hmax: int, n_random: int = 0, seed: int = 0,
                    deg_cap: int = 4) -> dict:
    """Check every lower-bound case on all pairs of quadratic numbers with
    H <= q^hmax, plus n_random higher-height instances.

    The exhaustive part decomposes |P(beta)| = |A| |beta-alpha| |beta-alpha'|
    into pairwise divergence depths, so each pair costs a few integer
    comparisons; any violation (or any agreement deeper than the certified
    window, which no true pair can achieve) is reported loudly.
    """
    import random as _random

    lo = -hmax
    top = 5 * hmax + 4
    L = top - lo
    polys = []
    for P in enumerate_min_quadratics(field, hmax):
        roots = roots_of_min_quadratic(P, top + 2)
        if not roots:
            continue
        if len(roots) != 2:
            raise PrecisionError(f"{P}: expected a conjugate pair of roots")
        a, b = roots
        gap = minpoly_conjugate_gap(P)
        polys.append({
            "P": P,
            "h": P.height().exponent,
            "degA": P.lead().degree,
            "gapneg": max(0, -gap.exponent),
            "gap": gap.exponent,
            "roots": (a, b),
            "wins": (_root_window(a, lo, top), _root_window(b, lo, top)),
            "m1s": (a.max1_exponent(), b.max1_exponent()),
        })
    violations = []
    n_pairs = 0
    n_checks = 0

    # per-polynomial cases: conjugate gap two-sided, same-poly root separation
    for e in polys:
        h, gap = e["h"], e["gap"]
        n_checks += 2
        if not (-h <= gap <= h):
            violations.append(("conjugate_gap", str(e["P"]), gap, h))
        if not (gap >= -h):  # n/f^2 - 1/f = 1 for separable quadratics
            violations.append(("equal_poly_roots", str(e["P"]), gap, -h))

    def first_diff(u, v):
        for k in range(L):
            if u[k] != v[k]:
                return k
        return None

    np = len(polys)
    for i in range(np):
        ei = polys[i]
        wi0, wi1 = ei["wins"]
        for j in range(i + 1, np):
            ej = polys[j]
            wj0, wj1 = ej["wins"]
            n_pairs += 1
            ds = (first_diff(wi0, wj0), first_diff(wi0, wj1),
                  first_diff(wi1, wj0), first_diff(wi1, wj1))
            if any(d is None for d in ds):
                violations.append(("window_agreement", f"{ei['P']}|{ej['P']}",
                                   None, top))
                continue
            d00, d01, d10, d11 = (lo + d for d in ds)
            hi_, hj_ = ei["h"], ej["h"]
            mi0, mi1 = ei["m1s"]
            mj0, mj1 = ej["m1s"]
            # algebraic_pair / root_distance on the four cross pairs
            n_checks += 4
            for dd, mx, my in ((d00, mi0, mj0), (d01, mi0, mj1),
                               (d10, mi1, mj0), (d11, mi1, mj1)):
                if -dd < mx + my - 2 * hi_ - 2 * hj_:
                    violations.append(("algebraic_pair", f"{ei['P']}|{ej['P']}",
                                       -dd, mx + my - 2 * hi_ - 2 * hj_))
            # quadratic_pair, both orderings (alpha-slot carries the gap term)
            n_checks += 4
            gi, gj = ei["gapneg"], ej["gapneg"]
            for dd in (d00, d01, d10, d11):
                if -dd < gi - 2 * hi_ - 2 * hj_:
                    violations.append(("quadratic_pair", f"{ei['P']}|{ej['P']}",
                                       -dd, gi - 2 * hi_ - 2 * hj_))
                if -dd < gj - 2 * hi_ - 2 * hj_:
                    violations.append(("quadratic_pair", f"{ej['P']}|{ei['P']}",
                                       -dd, gj - 2 * hi_ - 2 * hj_))
            # poly_value: |P_i(y)| = |A_i| |y-alpha| |y-alpha'| for y roots of P_j
            n_checks += 4
            dAi, dAj = ei["degA"], ej["degA"]
            for val, my in ((dAi - d00 - d10, mj0), (dAi - d01 - d11, mj1)):
                if val < 2 * my - hi_ - 2 * hj_:
                    violations.append(("poly_value", f"{ei['P']}|{ej['P']}",
                                       val, 2 * my - hi_ - 2 * hj_))
            for val, mx in ((dAj - d00 - d01, mi0), (dAj - d10 - d11, mi1)):
                if val < 2 * mx - hj_ - 2 * hi_:
                    violations.append(("poly_value", f"{ej['P']}|{ei['P']}",
                                       val, 2 * mx - hj_ - 2 * hi_))

    # randomised higher-height instances through the full checkers
    rng = _random.Random(seed)
    rand_rows = []

    def rand_poly(dmax, monic=False, nonzero=True):
        d = rng.randrange(0, dmax + 1)
        coeffs = [rng.randrange(field.q) for _ in range(d)]
        coeffs.append(1 if monic else rng.randrange(1, field.q))
        p = Poly(field, coeffs)
        if nonzero and p.is_zero:
            return Poly.one(field)
        return p

    cache = []
    attempts = 0
    while len(cache) < max(8, min(60, n_random // 50 + 8)) and attempts < 4000:
        attempts += 1
        P = XPoly.quadratic(rand_poly(deg_cap, monic=True),
                            rand_poly(deg_cap) if rng.random() < 0.9 else Poly.zero(field),
                            rand_poly(deg_cap))
        if not P.is_min_form or not is_irreducible_quadratic(P):
            continue
        roots = roots_of_min_quadratic(P, 12 * (deg_cap + 1))
        if len(roots) == 2:
            cache.append(roots)
    done = 0
    while done < n_random and cache:
        pi = rng.randrange(len(cache))
        pj = rng.randrange(len(cache))
        a = cache[pi][rng.randrange(2)]
        b = cache[pj][rng.randrange(2)]
        if a.key() == b.key():
            continue
        if a.minpoly == b.minpoly:
            rep = check_equal_poly_roots(a.minpoly, a, b)
        else:
            case = done % 3
            if case == 0:
                rep = check_algebraic_pair(a, b)
            elif case == 1:
                rep = check_quadratic_pair(a, b)
            else:
                rep = check_poly_value(a.minpoly, b.minpoly, b)
        if not rep.holds:
            violations.append((rep.case, rep.ids, rep.lhs, rep.rhs))
        if len(rand_rows) < 50:
            rand_rows.append(rep)
        done += 1
        n_checks += 1

    return {
        "field": field.to_json(),
        "hmax": hmax,
        "numbers": 2 * len(polys),
        "pairs": n_pairs,
        "checks": n_checks,
        "random_instances": done,
        "violations": violations,
        "sample_reports": rand_rows,
        "all_hold": not violations,
    }
