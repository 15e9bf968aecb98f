"""Brute-force evaluation of the height-limited approximation minima.

wn_of_height measures min |P(xi)| over polynomials of bounded X-degree and
height; wnstar_of_height measures min |xi - alpha| over algebraic numbers of
degree <= 2 and bounded height.  Both enumerate exhaustively, certify every
leading exponent against the input's precision frontier, and break ties by
the documented lexicographic order so results are reproducible bit for bit.

Coefficient tuples are ordered by ascending X-degree, then ascending
T-degree, and compared leftmost first; the first tuple attaining the
minimum is the witness.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, PrecisionError
from .gf import Fq, Poly
from .laurent import LaurentSeries
from .heights import (AlgebraicNumber, XPoly, enumerate_min_linears,
                      enumerate_min_quadratics, roots_of_min_quadratic,
                      xpoly_pseudo_divisible, format_xpoly)


@dataclass
class ExponentSample:
    """One height sample: H = q^h and the measured value q^(-v)."""

    n: int
    h: int
    v: int
    witness: object  # XPoly (wn) or AlgebraicNumber (wnstar)
    starred: bool = False

    @property
    def ratio(self) -> Fraction:
        r = Fraction(self.v, self.h) if self.h else Fraction(self.v if self.v else 0)
        return r - 1 if self.starred else r

    def csv_row(self):
        r = self.ratio
        return [self.n, self.h, self.v, r.numerator, r.denominator, str(self.witness)]


SAMPLE_CSV_HEADER = ["n", "h", "v", "ratio_num", "ratio_den", "witness"]


def _ord_or_none(xi: LaurentSeries):
    return xi.ord if xi.coeffs else None


def _validate_precision(xi: LaurentSeries, n: int, h: int, w_cap: int) -> int:
    """The documented demand: prec >= n*max(0, -ord) + (w_cap+1)*h + 2."""
    N = _ord_or_none(xi)
    if N is None and not xi.exact:
        raise PrecisionError("input series is zero to precision")
    slack = n * max(0, -(N if N is not None else 0))
    demand = slack + (w_cap + 1) * h + 2
    if not xi.exact and xi.prec < demand:
        raise PrecisionError(
            f"insufficient precision: have {xi.prec}, the (n={n}, h={h}, w_cap={w_cap}) "
            f"search demands {demand}")
    return demand


def default_w_cap(n: int, h: int, minpoly: XPoly = None) -> int:
    if minpoly is not None and h > 0:
        hM = minpoly.height().exponent
        return max(2 * n + 2, 1 + (n * hM + h - 1) // h)
    return 2 * n + 2


def wn_of_height(xi: LaurentSeries, n: int, h: int, minpoly: XPoly = None,
                 w_cap: int = None) -> ExponentSample:
    """min |P(xi)| over P with deg_X <= n, H(P) <= q^h, P(xi) != 0.

    `minpoly` (when xi is algebraic of degree <= n) lets the search prove
    that a candidate vanishing through the window vanishes exactly; without
    it such a candidate raises PrecisionError.
    """
    if n < 1 or h < 0:
        raise PreconditionError("need n >= 1 and h >= 0")
    F = xi.field
    if w_cap is None:
        w_cap = default_w_cap(n, h, minpoly)
    _validate_precision(xi, n, h, w_cap)
    N = _ord_or_none(xi)
    N0 = N if N is not None else 0

    # powers of xi, certified through the shared window top
    powers = [LaurentSeries.from_poly(Poly.one(F))]
    for _ in range(n):
        powers.append(powers[-1] * xi)
    all_exact = xi.exact
    if xi.exact:
        support_end = max((p.ord + len(p.coeffs)) for p in powers)
        Wtop = max(n * max(0, -N0) + (w_cap + 1) * h + 2, support_end + 1)
    else:
        Wtop = min(p.prec for p in powers[1:]) - h
    lo = min(i * N0 for i in range(n + 1)) - h if N0 < 0 else -h
    L = Wtop - lo
    if L <= 0:
        raise PrecisionError("certified window is empty")

    # basis vector for slot (i, j): coefficients of T^j * xi^i on [lo, Wtop)
    slots = []
    for i in range(n + 1):
        pw = powers[i]
        for j in range(h + 1):
            vec = [0] * L
            for t, c in enumerate(pw.coeffs):
                e = pw.ord + t - j
                if lo <= e < Wtop:
                    vec[e - lo] = c
            slots.append(vec)
    nslots = len(slots)
    lead_of = [next((k for k, c in enumerate(v) if c), L) for v in slots]
    reach = [L + 1] * (nslots + 1)
    for d in range(nslots - 1, -1, -1):
        reach[d] = min(reach[d + 1], lead_of[d])

    mul = F._mul
    scaled = []
    for v in slots:
        per_digit = [None]
        for c in range(1, F.q):
            row = mul[c]
            per_digit.append([row[x] for x in v])
        scaled.append(per_digit)

    add = F._add
    q = F.q
    best_idx = -1
    best_digits = None
    zero_candidates = []
    cur = [0] * L
    digits = [0] * nslots

    def descend(d):
        nonlocal best_idx, best_digits
        limit = reach[d]
        if limit > L:
            limit = L
        idx = -1
        for k in range(limit):
            if cur[k]:
                idx = k
                break
        if idx >= 0:
            # leading coefficient frozen: every leaf below has value q^-(lo+idx)
            if idx > best_idx:
                best_idx = idx
                best_digits = tuple(digits[:d]) + (0,) * (nslots - d)
            return
        if d == nslots:
            zero_candidates.append(tuple(digits))
            return
        vec = slots[d]
        sc = scaled[d]
        for c in range(q):
            digits[d] = c
            if c:
                sv = sc[c]
                for k in range(L):
                    if sv[k]:
                        cur[k] = add[cur[k]][sv[k]]
                descend(d + 1)
                sv_prev = sc[c]
                neg = F._neg
                for k in range(L):
                    if sv_prev[k]:
                        cur[k] = add[cur[k]][neg[sv_prev[k]]]
            else:
                descend(d + 1)
        digits[d] = 0

    descend(0)

    def tuple_to_xpoly(tup):
        polys = []
        for i in range(n + 1):
            polys.append(Poly(F, tup[i * (h + 1):(i + 1) * (h + 1)]))
        return XPoly(F, polys)

    for tup in zero_candidates:
        if not any(tup):
            continue  # P = 0 itself
        if all_exact:
            continue  # exactly zero: excluded by the P(xi) != 0 constraint
        P = tuple_to_xpoly(tup)
        if minpoly is not None and xpoly_pseudo_divisible(P, minpoly):
            continue
        raise PrecisionError(
            f"candidate {format_xpoly(P)} vanishes through the certified window")

    if best_idx < 0:
        raise PrecisionError("no certifiable nonzero value found")
    v = lo + best_idx
    return ExponentSample(n=n, h=h, v=v, witness=tuple_to_xpoly(best_digits))


_STAR_PREC = 48


def star_candidates(field: Fq, n: int, h: int, K: int = _STAR_PREC):
    """Deterministically ordered (alpha, series) candidates of degree <= n, H <= q^h."""
    out = []
    for P in enumerate_min_linears(field, h):
        g, f = P.coeff(1), -P.coeff(0)
        alpha = AlgebraicNumber.from_rational(f, g)
        out.append((alpha, alpha.series(K)))
    if n >= 2:
        for P in enumerate_min_quadratics(field, h):
            for alpha in roots_of_min_quadratic(P, K):
                out.append((alpha, alpha.series(K)))
    return out


_STAR_CACHE: dict = {}


def _star_candidates_cached(field: Fq, n: int, h: int, K: int):
    key = (field, n, h, K)
    if key not in _STAR_CACHE:
        _STAR_CACHE[key] = star_candidates(field, n, h, K)
    return _STAR_CACHE[key]


def wnstar_of_height(xi: LaurentSeries, n: int, h: int, self_key=None,
                     w_cap: int = None) -> ExponentSample:
    """min |xi - alpha| over algebraic alpha != xi of degree <= n, H(alpha) <= q^h.

    `self_key` (AlgebraicNumber.key() of xi, when xi is algebraic of degree
    <= n) excludes xi itself from the enumeration; candidates that agree with
    xi through the whole certified window otherwise raise PrecisionError.
    """
    if n not in (1, 2):
        raise PreconditionError("starred search supports n in {1, 2}")
    F = xi.field
    if w_cap is None:
        w_cap = default_w_cap(n, h)
    _validate_precision(xi, n, h, w_cap)
    Kc = max(_STAR_PREC, (xi.prec if not xi.exact else 0))
    best = None  # (v, alpha)
    for alpha, ser in _star_candidates_cached(F, n, h, Kc):
        if self_key is not None and alpha.key() == self_key:
            continue
        d = xi.first_difference(ser)
        if d is None:
            if xi.exact and ser.exact:
                continue  # genuinely equal (xi rational): excluded by alpha != xi
            raise PrecisionError(
                f"candidate {alpha} agrees with the input through the certified window")
        if best is None or d > best[0]:
            best = (d, alpha)
    if best is None:
        raise PrecisionError("no certifiable candidate distance")
    return ExponentSample(n=n, h=h, v=best[0], witness=best[1], starred=True)


def exponent_estimate(xi: LaurentSeries, n: int, h_list, starred: bool = False,
                      minpoly: XPoly = None, self_key=None) -> dict:
    """Per-height samples and the running-max lower-bound estimate.

    The estimate is reported with its sample table and is a lower bound for
    the limit superior by construction; no extrapolation is applied.
    """
    if not h_list:
        raise PreconditionError("empty height list")
    samples = []
    best = None
    for h in sorted(h_list):
        if starred:
            s = wnstar_of_height(xi, n, h, self_key=self_key)
        else:
            s = wn_of_height(xi, n, h, minpoly=minpoly)
        samples.append(s)
        r = s.ratio
        best = r if best is None or r > best else best
    return {"samples": samples, "west": best}


def w1_from_cf(quotients) -> Fraction:
    """max over the available prefix of deg q_{n+1} / deg q_n (n >= 1)."""
    degs = [a.degree for a in quotients]
    if len(degs) < 2:
        raise PreconditionError("need at least two partial quotients")
    sums = []
    acc = 0
    for d in degs:
        acc += d
        sums.append(acc)
    return max(Fraction(sums[i + 1], sums[i]) for i in range(len(sums) - 1))
