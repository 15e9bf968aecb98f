"""Continued fractions over F_q((1/T)).

Expansion of rationals and of truncated series (with a soundness rule for
how many partial quotients the truncation certifies), convergent tables,
the periodic <-> quadratic dictionary, and conjugate geometry.

Partial quotients a_n have deg >= 1 for n >= 1; a_0 is unrestricted.  An
eventually periodic fraction carries a (start, length) marker meaning the
quotients a_{start+1..start+length} repeat forever.
"""

from dataclasses import dataclass

from .errors import DegenerateRepresentationError, PreconditionError, PrecisionError
from .gf import AbsValue, Fq, Poly, poly_gcd
from .heights import AlgebraicNumber, XPoly, is_irreducible_quadratic, minpoly_conjugate_gap
from .laurent import LaurentSeries, quadratic_roots, series_from_rational


@dataclass(frozen=True)
class Period:
    start: int
    length: int


class ContinuedFraction:
    __slots__ = ("field", "a0", "quotients", "period")

    def __init__(self, field: Fq, a0: Poly, quotients=(), period: Period = None):
        quotients = tuple(quotients)
        for a in quotients:
            if a.is_zero or a.degree < 1:
                raise PreconditionError("partial quotients after a_0 need degree >= 1")
        if period is not None:
            if period.length < 1 or period.start < 0:
                raise PreconditionError("period must have length >= 1 and start >= 0")
            if period.start + period.length != len(quotients):
                raise PreconditionError(
                    "periodic representation must store exactly start+length quotients")
        self.field = field
        self.a0 = a0
        self.quotients = quotients
        self.period = period

    @property
    def is_finite(self) -> bool:
        return self.period is None

    def quotient(self, n: int) -> Poly:
        """a_n for n >= 0, unfolding the period; raises past the end of a finite CF."""
        if n == 0:
            return self.a0
        if self.period is None or n <= self.period.start + self.period.length:
            if n > len(self.quotients):
                raise PreconditionError(f"finite continued fraction has no quotient {n}")
            return self.quotients[n - 1]
        r, s = self.period.start, self.period.length
        return self.quotients[r + (n - r - 1) % s]

    def quotient_or_none(self, n: int):
        if n == 0:
            return self.a0
        if self.period is None and n > len(self.quotients):
            return None
        return self.quotient(n)

    def prefix(self, n: int):
        """[a_0, a_1, ..., a_n]."""
        return [self.quotient(k) for k in range(n + 1)]

    def __eq__(self, other):
        return (isinstance(other, ContinuedFraction) and self.field == other.field
                and self.a0 == other.a0 and self.quotients == other.quotients
                and self.period == other.period)

    def __str__(self):
        parts = [str(self.a0)]
        r = self.period.start if self.period else len(self.quotients)
        parts.extend(str(a) for a in self.quotients[:r])
        body = ", ".join(parts)
        if self.period:
            per = ", ".join(str(a) for a in self.quotients[r:])
            return f"[{body}; per({per})]"
        return f"[{body}]"

    def __repr__(self):
        return f"ContinuedFraction({self})"

    def to_json(self) -> dict:
        return {
            "a0": self.a0.to_json(),
            "quotients": [a.to_json() for a in self.quotients],
            "period": None if self.period is None else
                {"start": self.period.start, "len": self.period.length},
        }

    @classmethod
    def from_json(cls, field: Fq, d: dict) -> "ContinuedFraction":
        per = d.get("period")
        return cls(field, Poly.from_json(field, d["a0"]),
                   [Poly.from_json(field, a) for a in d.get("quotients", ())],
                   None if per is None else Period(int(per["start"]), int(per["len"])))


class ConvergentTable:
    """Rows (n, p_n, q_n) for n = 0..N, with the seed pair at n = -1."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Fq, rows):
        self.field = field
        self.rows = rows  # list of (p, q), index n

    def p(self, n: int) -> Poly:
        if n == -1:
            return Poly.one(self.field)
        return self.rows[n][0]

    def q(self, n: int) -> Poly:
        if n == -1:
            return Poly.zero(self.field)
        return self.rows[n][1]

    def __len__(self):
        return len(self.rows)

    def pair(self, n: int):
        return self.p(n), self.q(n)


def convergents(cf: ContinuedFraction, n: int) -> ConvergentTable:
    """Convergent table through index n (unfolding the period as needed)."""
    rows = []
    p_prev, q_prev = Poly.one(cf.field), Poly.zero(cf.field)
    p_cur, q_cur = cf.a0, Poly.one(cf.field)
    rows.append((p_cur, q_cur))
    for k in range(1, n + 1):
        a = cf.quotient(k)
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        rows.append((p_cur, q_cur))
    return ConvergentTable(cf.field, rows)


def cf_expand_rational(f: Poly, g: Poly) -> ContinuedFraction:
    """Finite continued fraction of f/g by the Euclidean algorithm."""
    if g.is_zero:
        raise PreconditionError("zero denominator")
    quots = []
    while True:
        a, r = divmod(f, g)
        quots.append(a)
        if r.is_zero:
            break
        f, g = g, r
    return ContinuedFraction(f.field, quots[0], quots[1:])


def cf_expand_series(xi: LaurentSeries):
    """Certified partial quotients of every series agreeing with xi to its precision.

    Returns (prefix, certified_count) where certified_count quotients a_0..a_m
    were emitted; a quotient is emitted only while the remaining series is
    known through exponent 0, so the output is identical for every series
    matching xi within precision.
    """
    F = xi.field
    quots = []
    z = xi
    while True:
        if z.is_zero:
            if z.is_exact_zero and quots:
                break  # expansion terminated exactly
            if not quots:
                quots.append(Poly.zero(F))
            break
        if z.ord > 0:
            a = Poly.zero(F)
        else:
            if not z.exact and z.prec < 1:
                break
            a = Poly(F, tuple(z.coeff(n) for n in range(0, z.ord - 1, -1)))
        if quots and a.degree < 1:
            break  # cannot happen for |z| > 1; defensive
        quots.append(a)
        frac = z - LaurentSeries.from_poly(a)
        if frac.is_zero:
            if frac.is_exact_zero:
                break
            break  # tail unknown beyond precision: stop, prefix stays certified
        if not frac.exact and frac.prec - 2 * frac.ord < 1:
            break
        z = frac.inv()
    cf = ContinuedFraction(F, quots[0], quots[1:]) if quots else \
        ContinuedFraction(F, Poly.zero(F))
    return cf, len(quots) if quots else 0


def cf_value(cf: ContinuedFraction, K: int) -> LaurentSeries:
    """The value of the fraction as a series certified to precision K.

    Uses the approximation identity |xi - p_n/q_n| = |q_n q_{n+1}|^(-1): the
    period is unfolded until the identity certifies K coefficients.
    """
    if cf.is_finite:
        n = len(cf.quotients)
        tab = convergents(cf, n)
        return series_from_rational(tab.p(n), tab.q(n), K)
    n = 1
    dq = cf.quotient(1).degree
    while 2 * dq + cf.quotient(n + 1).degree < K + 1:
        n += 1
        dq += cf.quotient(n).degree
    tab = convergents(cf, n)
    s = series_from_rational(tab.p(n), tab.q(n), K)
    return LaurentSeries(cf.field, s.ord, s.coeffs, K)


def minimize_period(cf: ContinuedFraction) -> ContinuedFraction:
    """Canonical representation: smallest period length, then smallest preperiod."""
    if cf.period is None:
        raise PreconditionError("not an eventually periodic continued fraction")
    r, s = cf.period.start, cf.period.length
    block = [cf.quotient(r + 1 + i) for i in range(s)]
    s_min = s
    for d in range(1, s):
        if s % d == 0 and all(block[i] == block[i % d] for i in range(s)):
            s_min = d
            break
    while r > 0 and cf.quotient(r) == cf.quotient(r + s_min):
        r -= 1
    quots = [cf.quotient(k) for k in range(1, r + s_min + 1)]
    return ContinuedFraction(cf.field, cf.a0, quots, Period(r, s_min))


def is_purely_periodic(cf: ContinuedFraction) -> bool:
    """Whether the whole quotient stream a_0, a_1, ... is periodic from the start."""
    if cf.period is None:
        return False
    m = minimize_period(cf)
    if m.period.start != 0:
        return False
    s = m.period.length
    return (not m.a0.is_zero) and m.a0.degree >= 1 and m.quotient(s) == m.a0


def periodic_minimal_polynomial(cf: ContinuedFraction) -> XPoly:
    """The canonical minimal polynomial of an eventually periodic fraction.

    The representation is first minimised; the quadratic built from the
    convergents is then divided by its content and scaled so the leading
    coefficient is monic.
    """
    if cf.period is None:
        raise PreconditionError("not an eventually periodic continued fraction")
    m = minimize_period(cf)
    r, s = m.period.start, m.period.length
    zeta = ContinuedFraction(cf.field, Poly.zero(cf.field), m.quotients, m.period)
    tab = convergents(zeta, r + s)
    A = tab.q(r - 1) * tab.q(r + s) - tab.q(r) * tab.q(r + s - 1)
    B = (tab.q(r - 1) * tab.p(r + s) - tab.q(r) * tab.p(r + s - 1)
         + tab.p(r - 1) * tab.q(r + s) - tab.p(r) * tab.q(r + s - 1))
    C = tab.p(r - 1) * tab.p(r + s) - tab.p(r) * tab.p(r + s - 1)
    if A.is_zero:
        raise DegenerateRepresentationError(
            "leading coefficient vanished; the period representation must be rotated")
    P = XPoly.quadratic(A, -B, C)
    if not cf.a0.is_zero:
        P = P.shift_x(cf.a0)
    P = P.primitive_min()
    if not is_irreducible_quadratic(P):
        raise DegenerateRepresentationError("periodic value produced a reducible quadratic")
    return P


def periodic_eval(cf: ContinuedFraction, K: int) -> LaurentSeries:
    """The unique root of the minimal polynomial selected by the fraction's
    certified prefix, to precision K."""
    if cf.is_finite:
        n = len(cf.quotients)
        tab = convergents(cf, n)
        return series_from_rational(tab.p(n), tab.q(n), K)
    M = periodic_minimal_polynomial(cf)
    A, B, C = M.coeff(2), M.coeff(1), M.coeff(0)
    Kw = K + 4
    for _ in range(4):
        roots = quadratic_roots(A, B, C, Kw)
        ref = cf_value(cf, Kw)
        match = [rt for rt in roots if rt.first_difference(ref) is None]
        if len(match) == 1:
            return match[0].truncate(K)
        Kw *= 2
    raise PrecisionError("could not separate the roots from the prefix")


def algebraic_number_from_periodic(cf: ContinuedFraction) -> AlgebraicNumber:
    """Package an eventually periodic fraction as minimal polynomial + selector."""
    M = periodic_minimal_polynomial(cf)
    gap = minpoly_conjugate_gap(M)
    depth = 8 if gap is None else max(8, -gap.exponent + 4)
    root = periodic_eval(cf, depth + 4)
    A, B, C = M.coeff(2), M.coeff(1), M.coeff(0)
    others = [rt for rt in quadratic_roots(A, B, C, depth + 4)
              if rt.first_difference(root) is not None]
    other = others[0] if others else None
    return AlgebraicNumber.from_quadratic_root(M, root, other=other)


def cf_galois_conjugate(cf: ContinuedFraction) -> ContinuedFraction:
    """For purely periodic xi with deg a_0 >= 1: the fraction of -1/xi',
    whose quotient stream is the reversed period."""
    if not is_purely_periodic(cf):
        raise PreconditionError("purely periodic continued fraction required")
    m = minimize_period(cf)
    s = m.period.length
    block = [m.a0] + [m.quotient(k) for k in range(1, s)]
    rev = list(reversed(block))
    return ContinuedFraction(cf.field, rev[0], rev[1:] + [rev[0]], Period(0, s))


@dataclass
class ConjugateGap:
    """Exact |xi - xi'| together with the two-sided audit bracket."""

    outcome: str                 # "separable" or "equal"
    value: AbsValue = None
    lower: AbsValue = None
    upper: AbsValue = None
    within: bool = True


def conjugate_gap(cf: ContinuedFraction) -> ConjugateGap:
    """Exact conjugate distance of an eventually periodic fraction, with the
    min(|a_r|,|a_{r+s}|)/|q_r|^2 .. |a_r a_{r+s}|/|q_r|^2 bracket for audit.

    The bracket uses the representation as given, which must have r >= 1 and
    a_r != a_{r+s}.
    """
    if cf.period is None:
        raise PreconditionError("not an eventually periodic continued fraction")
    r, s = cf.period.start, cf.period.length
    if r < 1:
        raise PreconditionError("bracket needs a preperiod (r >= 1)")
    ar, ars = cf.quotient(r), cf.quotient(r + s)
    if ar == ars:
        raise PreconditionError("a_r = a_{r+s}: bracket hypothesis violated")
    M = periodic_minimal_polynomial(cf)
    gap = minpoly_conjugate_gap(M)
    if gap is None:
        return ConjugateGap(outcome="equal")
    zeta = ContinuedFraction(cf.field, Poly.zero(cf.field), cf.quotients, cf.period)
    qr = convergents(zeta, r).q(r)
    lo = AbsValue(False, min(ar.degree, ars.degree) - 2 * qr.degree)
    hi = AbsValue(False, ar.degree + ars.degree - 2 * qr.degree)
    return ConjugateGap(outcome="separable", value=gap, lower=lo, upper=hi,
                        within=lo <= gap <= hi)


def cf_pair_distance(cfa: ContinuedFraction, cfb: ContinuedFraction, upto: int = 10000):
    """Exact |xi - zeta| for two fractions, from their first quotient difference.

    Returns (n0, AbsValue).  Scans at most `upto` quotients; identical streams
    raise (equal values carry no distance).
    """
    if cfa.a0 != cfb.a0:
        d = cfa.a0 - cfb.a0
        return 0, AbsValue(False, max(d.degree, 0) if not d.is_zero else 0)
    degsum = 0
    for n in range(1, upto + 1):
        a = cfa.quotient_or_none(n)
        b = cfb.quotient_or_none(n)
        if a is None and b is None:
            raise PreconditionError("the two fractions are equal")
        if a is None or b is None:
            cont = b if a is None else a
            return n, AbsValue(False, -(2 * degsum + cont.degree))
        if a != b:
            diff = a - b
            return n, AbsValue(False,
                               diff.degree - 2 * degsum - a.degree - b.degree)
        degsum += a.degree
    raise PrecisionError(f"no quotient difference within the first {upto} quotients")
