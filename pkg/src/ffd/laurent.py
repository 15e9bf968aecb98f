"""Truncated Laurent series in 1/T with certified precision.

A series x = sum_{n >= N} a_n T^(-n) is stored as its order N (exponent of
the leading term T^(-N)), the coefficient indices for exponents N..K-1, and
the precision frontier K: coefficients at exponents >= K are unknown unless
the `exact` flag is set, in which case they are all zero and the series is
the finite sum shown.  |x| = q^(-N).

Precision is propagated pessimistically through every operation; a result's
frontier is the largest exponent the inputs certify.  Nothing here ever
guesses a coefficient: if an operation cannot certify what it needs, it
raises PrecisionError.
"""

from .errors import PreconditionError, PrecisionError
from .gf import AbsValue, Fq, Poly, poly_exact_sqrt

_INF = None  # frontier value used internally for exact series


class LaurentSeries:
    __slots__ = ("field", "ord", "coeffs", "prec", "exact")

    def __init__(self, field: Fq, ord: int, coeffs, prec: int, exact: bool = False):
        coeffs = list(coeffs)
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            ord += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not exact and coeffs and ord + len(coeffs) > prec:
            coeffs = coeffs[:max(0, prec - ord)]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if coeffs and coeffs[0] == 0:
                # re-normalise after truncation
                while coeffs and coeffs[0] == 0:
                    coeffs.pop(0)
                    ord += 1
        self.field = field
        self.coeffs = tuple(coeffs)
        if coeffs:
            self.ord = ord
        else:
            self.ord = prec if not exact else 0
        self.prec = prec if not exact else max(prec, self.ord + len(self.coeffs))
        self.exact = exact

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, field: Fq, prec=None) -> "LaurentSeries":
        """Exact zero when prec is None, otherwise zero-to-precision prec."""
        if prec is None:
            return cls(field, 0, (), 0, exact=True)
        return cls(field, prec, (), prec)

    @classmethod
    def from_poly(cls, f: Poly) -> "LaurentSeries":
        if f.is_zero:
            return cls.zero(f.field)
        return cls(f.field, -f.degree, tuple(reversed(f.coeffs)), 1, exact=True)

    @classmethod
    def monomial(cls, field: Fq, c: int, n: int) -> "LaurentSeries":
        """c * T^(-n), exact."""
        if c == 0:
            return cls.zero(field)
        return cls(field, n, (c,), n + 1, exact=True)

    # -- structure ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """Zero as far as this representation knows (exact zero or zero-to-prec)."""
        return not self.coeffs

    @property
    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.exact

    @property
    def is_zero_to_prec(self) -> bool:
        return not self.coeffs and not self.exact

    def _frontier(self):
        return _INF if self.exact else self.prec

    def coeff(self, n: int) -> int:
        """Coefficient at exponent n; raises PrecisionError beyond the frontier."""
        if self.coeffs and self.ord <= n < self.ord + len(self.coeffs):
            return self.coeffs[n - self.ord]
        if self.exact or n < self.prec:
            return 0
        raise PrecisionError(f"coefficient at exponent {n} is beyond precision {self.prec}")

    def window(self, lo: int, hi: int):
        return [self.coeff(n) for n in range(lo, hi)]

    def abs_value(self) -> AbsValue:
        if self.is_exact_zero:
            return AbsValue.null()
        if self.is_zero_to_prec:
            raise PrecisionError(
                f"series is zero to precision {self.prec}; absolute value uncertified")
        return AbsValue(False, -self.ord)

    def truncate(self, K: int) -> "LaurentSeries":
        if self.exact and self.ord + len(self.coeffs) <= K:
            return self
        newprec = K if self.exact else min(self.prec, K)
        return LaurentSeries(self.field, self.ord, self.coeffs, newprec)

    # -- arithmetic ----------------------------------------------------------------

    def __neg__(self) -> "LaurentSeries":
        neg = self.field._neg
        return LaurentSeries(self.field, self.ord, tuple(neg[c] for c in self.coeffs),
                             self.prec, self.exact)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        fa, fb = self._frontier(), other._frontier()
        if fa is _INF and fb is _INF:
            lo = min(self.ord, other.ord) if (self.coeffs or other.coeffs) else 0
            hi = max(self.ord + len(self.coeffs), other.ord + len(other.coeffs), lo)
            out = [F.add(self.coeff(n), other.coeff(n)) for n in range(lo, hi)]
            return LaurentSeries(F, lo, out, hi, exact=True)
        prec = fa if fb is _INF else fb if fa is _INF else min(fa, fb)
        lo = min(self.ord if self.coeffs else prec, other.ord if other.coeffs else prec)
        out = [F.add(self.coeff(n), other.coeff(n)) for n in range(lo, prec)]
        return LaurentSeries(F, lo, out, prec)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        F = self.field
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentSeries.zero(F)
        fa, fb = self._frontier(), other._frontier()
        if self.is_zero or other.is_zero:
            # at least one factor is zero-to-prec
            if self.is_zero and other.is_zero:
                prec = min(self.prec + other.prec, 4 * max(self.prec, other.prec))
            elif self.is_zero:
                prec = self.prec + other.ord
            else:
                prec = other.prec + self.ord
            return LaurentSeries.zero(F, prec)
        if fa is _INF and fb is _INF:
            prec = _INF
            hi = self.ord + len(self.coeffs) + other.ord + len(other.coeffs) - 1
        else:
            p1 = _INF if fa is _INF else fa + other.ord
            p2 = _INF if fb is _INF else fb + self.ord
            prec = p2 if p1 is _INF else p1 if p2 is _INF else min(p1, p2)
            hi = prec
        lo = self.ord + other.ord
        add, mul = F._add, F._mul
        out = [0] * (hi - lo)
        a, b = self.coeffs, other.coeffs
        for i, ca in enumerate(a):
            if ca:
                row = mul[ca]
                base = self.ord + i + other.ord - lo
                for j, cb in enumerate(b):
                    k = base + j
                    if k >= hi - lo:
                        break
                    if cb:
                        out[k] = add[out[k]][row[cb]]
        if prec is _INF:
            return LaurentSeries(F, lo, out, hi, exact=True)
        return LaurentSeries(F, lo, out, prec)

    def inv(self, prec=None) -> "LaurentSeries":
        """Multiplicative inverse.

        For a non-exact input the certified frontier is prec(a) - 2*ord(a);
        for exact inputs a target precision may be supplied (defaults to a
        relative precision matching the stored coefficient span, min 32).
        """
        F = self.field
        if self.is_exact_zero:
            raise PreconditionError("inverse of the zero series")
        if self.is_zero_to_prec:
            raise PrecisionError("inverse of a series that is zero to precision")
        n0 = self.ord
        if self.exact:
            if len(self.coeffs) == 1:
                c = F.inv(self.coeffs[0])
                return LaurentSeries(F, -n0, (c,), -n0 + 1, exact=True)
            rel = max(32, 2 * len(self.coeffs)) if prec is None else max(1, prec + n0)
        else:
            rel = self.prec - n0
            if prec is not None:
                rel = min(rel, max(1, prec + n0))
        # u = tail/lead; v = 1/(1+u) by the convolution recurrence
        lead = self.coeffs[0]
        inv_lead = F.inv(lead)
        u = [F.mul(inv_lead, c) for c in self.coeffs[1:rel]]
        u += [0] * (rel - 1 - len(u))
        v = [1] + [0] * (rel - 1)
        add, mul, neg = F._add, F._mul, F._neg
        for k in range(1, rel):
            acc = 0
            for j in range(1, k + 1):
                if j - 1 < len(u) and u[j - 1] and v[k - j]:
                    acc = add[acc][mul[u[j - 1]][v[k - j]]]
            v[k] = neg[acc]
        out = [F.mul(inv_lead, c) for c in v]
        return LaurentSeries(F, -n0, out, -n0 + rel)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field == other.field and self.ord == other.ord
                and self.coeffs == other.coeffs and self.prec == other.prec
                and self.exact == other.exact)

    def __hash__(self):
        return hash((self.field, self.ord, self.coeffs, self.prec, self.exact))

    def first_difference(self, other: "LaurentSeries"):
        """Smallest exponent where the two series certifiably differ, else None.

        None means they agree on the whole jointly certified range (which is
        unbounded when both are exact).
        """
        fa, fb = self._frontier(), other._frontier()
        if fa is _INF and fb is _INF:
            hi = max(self.ord + len(self.coeffs), other.ord + len(other.coeffs))
        else:
            hi = fa if fb is _INF else fb if fa is _INF else min(fa, fb)
        lo_candidates = []
        if self.coeffs:
            lo_candidates.append(self.ord)
        if other.coeffs:
            lo_candidates.append(other.ord)
        if not lo_candidates:
            return None
        lo = min(lo_candidates)
        for n in range(lo, hi):
            if self.coeff(n) != other.coeff(n):
                return n
        return None

    def agrees_to(self, other: "LaurentSeries", K: int) -> bool:
        d = self.first_difference(other)
        return d is None or d >= K

    def __str__(self):
        if self.is_exact_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            n = self.ord + i
            if n == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}T^{-n}" if n < 0 else f"{head}T^-{n}")
        body = "+".join(terms) if terms else "0"
        return body if self.exact else f"{body}+O(T^-{self.prec})"

    def __repr__(self):
        return f"LaurentSeries({self})"

    def to_json(self) -> dict:
        return {"ord": self.ord, "prec": self.prec, "coeffs": list(self.coeffs),
                "exact": self.exact}

    @classmethod
    def from_json(cls, field: Fq, d: dict) -> "LaurentSeries":
        return cls(field, int(d["ord"]), [int(c) for c in d["coeffs"]], int(d["prec"]),
                   bool(d.get("exact", False)))


# -- module operations -------------------------------------------------------------


def series_from_rational(f: Poly, g: Poly, K: int) -> LaurentSeries:
    """The expansion of f/g to precision K, exact when g divides f."""
    F = f.field
    if g.is_zero:
        raise PreconditionError("zero denominator")
    if f.is_zero:
        return LaurentSeries.zero(F)
    M = max(K + g.degree, 0)
    quot, rem = divmod(f.shift(M), g)
    # f/g = quot*T^(-M) + rem*T^(-M)/g with |rem/g| < 1: coefficients at
    # exponents <= M are those of quot.
    coeffs = list(reversed(quot.coeffs))
    ord0 = (M - quot.degree) if not quot.is_zero else M + 1
    if rem.is_zero:
        return LaurentSeries(F, ord0, coeffs, M + 1, exact=True)
    return LaurentSeries(F, ord0, coeffs, M + 1).truncate(K)


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a + b


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def series_inv(a: LaurentSeries, prec=None) -> LaurentSeries:
    return a.inv(prec)


def series_sqrt(a: LaurentSeries, prec=None) -> LaurentSeries:
    """A square root of a, with the branch fixed by the canonical square root
    of the leading coefficient (characteristic 2: the unique root, termwise)."""
    F = a.field
    if a.is_exact_zero:
        return a
    if a.is_zero_to_prec:
        raise PrecisionError("square root of a series that is zero to precision")
    if a.ord % 2:
        raise PreconditionError("no square root: odd order")
    m = a.ord // 2
    if F.p == 2:
        rel_in = (len(a.coeffs) if a.exact else a.prec - a.ord)
        for i in range(1, rel_in, 2):
            if i < len(a.coeffs) and a.coeffs[i] != 0:
                raise PreconditionError(
                    "no square root: odd-exponent coefficient within precision")
        out = [F.sqrt(a.coeffs[i]) if i < len(a.coeffs) else 0
               for i in range(0, rel_in, 2)]
        if a.exact:
            return LaurentSeries(F, m, out, m + len(out), exact=True)
        return LaurentSeries(F, m, out, m + (a.prec - a.ord + 1) // 2)
    r = F.sqrt(a.coeffs[0])
    if r is None:
        raise PreconditionError("no square root: leading coefficient is not a square")
    if a.exact:
        rel = max(32, 2 * len(a.coeffs)) if prec is None else max(1, prec - m)
    else:
        rel = a.prec - a.ord
    inv_lead = F.inv(a.coeffs[0])
    u = [F.mul(inv_lead, a.coeffs[i]) if i < len(a.coeffs) else 0 for i in range(1, rel)]
    v = [0] * rel
    inv2 = F.inv(F.from_int(2))
    add, mul = F._add, F._mul
    for k in range(1, rel):
        acc = u[k - 1]
        for i in range(1, k):
            if v[i] and v[k - i]:
                acc = F.sub(acc, mul[v[i]][v[k - i]])
        v[k] = mul[inv2][acc]
    out = [r] + [F.mul(r, v[k]) for k in range(1, rel)]
    return LaurentSeries(F, m, out, m + rel)


def artin_schreier_solve(E: LaurentSeries, prec=None) -> LaurentSeries:
    """Solve Y^2 + Y = E in characteristic 2 for |E| < 1 via Y = sum E^(2^i).

    The other root is Y + 1.  Inputs with |E| >= 1 are rejected; reducing to
    this case is the caller's job.
    """
    F = E.field
    if F.p != 2:
        raise PreconditionError("Artin-Schreier solving requires characteristic 2")
    if E.is_exact_zero:
        return E
    if E.is_zero_to_prec:
        return LaurentSeries.zero(F, E.prec)
    if E.ord < 1:
        raise PreconditionError("|E| >= 1: reduce to the |E| < 1 case first")
    K = prec if prec is not None else (E.prec if not E.exact
                                       else 2 * (E.ord + len(E.coeffs)) + 8)
    acc = E.truncate(K)
    term = acc
    while True:
        term = (term * term).truncate(K)
        if term.is_zero or term.ord >= K:
            break
        acc = acc + term
    # the true root continues beyond K even when the inputs are exact
    return LaurentSeries(E.field, acc.ord, acc.coeffs, K)


def quadratic_roots(A: Poly, B: Poly, C: Poly, K: int):
    """All roots of A X^2 + B X + C lying in F_q((1/T)), each to precision K.

    Returns a deterministically ordered list (sorted by order and coefficient
    tuple); the list is empty when no root lies in the field.
    """
    F = A.field
    if A.is_zero:
        raise PreconditionError("leading coefficient A must be nonzero")
    slack = 2 * max(A.degree, B.degree if not B.is_zero else 0,
                    C.degree if not C.is_zero else 0, 1) + 6
    Kint = K + slack
    if F.p != 2:
        roots = _roots_odd_char(A, B, C, K, Kint)
    elif B.is_zero:
        roots = _roots_char2_inseparable(A, C, K)
    else:
        roots = _roots_char2_separable(A, B, C, K, Kint)
    return sorted(roots, key=lambda s: (s.ord if s.coeffs else s.prec, s.coeffs))


def _roots_odd_char(A, B, C, K, Kint):
    F = A.field
    D = B * B - Poly.from_ints(F, (4,)) * A * C
    two_A = Poly.from_ints(F, (2,)) * A
    if D.is_zero:
        return [series_from_rational(-B, two_A, K)]
    if D.degree % 2 or not F.is_square(D.lc()):
        return []
    s = series_sqrt(LaurentSeries.from_poly(D), prec=Kint)
    inv2A = LaurentSeries.from_poly(two_A).inv(prec=Kint)
    minusB = LaurentSeries.from_poly(-B)
    r1 = ((minusB + s) * inv2A).truncate(K)
    r2 = ((minusB - s) * inv2A).truncate(K)
    return [r1, r2]


def _roots_char2_inseparable(A, C, K):
    # X^2 = C/A: a root exists iff C*A has only even T-exponents; then the
    # root is sqrt(C*A)/A, a single (double) root.
    F = A.field
    if C.is_zero:
        return [LaurentSeries.zero(F)]
    CA = C * A
    s = poly_exact_sqrt(CA)
    if s is None:
        return []
    return [series_from_rational(s, A, K)]


def _roots_char2_separable(A, B, C, K, Kint):
    # substitute X = (B/A) Y: Y^2 + Y = A*C/B^2 =: E; split E into its
    # polynomial part (solved degreewise over F_q[T]) and its tail (solved
    # by the telescoping sum).
    F = A.field
    N = A * C
    D = B * B
    Q, R = divmod(N, D)
    head = _poly_artin_schreier_root(Q)
    if head is None:
        return []
    if R.is_zero:
        S = LaurentSeries.zero(F)
    else:
        S = artin_schreier_solve(series_from_rational(R, D, Kint), prec=Kint)
    Y1 = LaurentSeries.from_poly(head) + S
    Y2 = Y1 + LaurentSeries.from_poly(Poly.one(F))
    scale = series_from_rational(B, A, Kint + 2 * max(B.degree, 1))
    r1 = (scale * Y1).truncate(K)
    r2 = (scale * Y2).truncate(K)
    return [r1, r2]


def _poly_artin_schreier_root(Q: Poly):
    """A polynomial R with R^2 + R = Q, or None (characteristic 2)."""
    F = Q.field
    R = Poly.zero(F)
    rem = Q
    while not rem.is_zero and rem.degree >= 1:
        d = rem.degree
        if d % 2:
            return None
        c = F.sqrt(rem.lc())
        term = Poly.monomial(F, c, d // 2)
        R = R + term
        rem = rem - (term * term + term)
    if rem.is_zero:
        return R
    c0 = F.artin_schreier_root(rem.coeff(0))
    if c0 is None:
        return None
    return R + Poly.constant(F, c0)


def rational_reconstruct(xi: LaurentSeries, max_den_deg: int):
    """Convergent pairs (f, g) with deg g <= max_den_deg approximating xi.

    Pairs are produced by the Euclidean loop on the series; callers test any
    exactness they need (e.g. P(f/g) = 0) by polynomial arithmetic.
    """
    F = xi.field
    pairs = []
    p_prev, q_prev = Poly.one(F), Poly.zero(F)
    p_cur, q_cur = None, None
    z = xi
    while True:
        if z.is_zero:
            break
        if z.ord > 0:
            a = Poly.zero(F)
        else:
            if not z.exact and z.prec < 1:
                break
            a = Poly(F, tuple(z.coeff(n) for n in range(0, z.ord - 1, -1)))
        if p_cur is None:
            p_cur, q_cur = a, Poly.one(F)
        else:
            p_prev, p_cur = p_cur, a * p_cur + p_prev
            q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur.degree > max_den_deg:
            break
        pairs.append((p_cur, q_cur))
        frac = z - LaurentSeries.from_poly(a)
        if frac.is_zero:
            break
        if not frac.exact and frac.prec - 2 * frac.ord < 1:
            break
        z = frac.inv()
    return pairs
