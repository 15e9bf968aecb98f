"""Exact arithmetic in F_q, F_q[T], and the q-power absolute value.

Field elements are stored as integer indices in [0, q).  For q = p^e the
index encodes the coefficient vector of the element with respect to the
power basis of the defining modulus, least significant digit first:
index = c_0 + c_1*p + ... + c_{e-1}*p^(e-1).  Index arithmetic is table
driven; the tables are built once per field.

Polynomials over F_q are immutable tuples of coefficient indices, ascending
by power of T.  The zero polynomial is the empty tuple; its degree is the
NEG_INF sentinel, distinct from every integer.  Absolute values |f| =
q^{deg f} are carried as integer exponents of q, never as floats, so every
inequality in the rest of the library is an integer comparison.
"""

import re
from dataclasses import dataclass

from .errors import PreconditionError

_TABLE_CAP = 4096  # largest q for which full op tables are materialised


class _NegInfType:
    """Order-only sentinel below every integer (degree of the zero polynomial)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INF")

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInfType()


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _vec_mul_mod(u, v, modulus, p):
    # product of coefficient vectors reduced by the monic modulus over F_p
    e = len(modulus) - 1
    prod = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    prod[i + j] = (prod[i + j] + a * b) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(e):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    return tuple(prod[:e])


def _modp_poly_divmod(a, b, p):
    # divmod of coefficient lists over F_p, used only for modulus validation
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        k = len(a) - 1 - db
        c = (a[-1] * inv_lb) % p
        q[k] = c
        for j in range(db + 1):
            a[k + j] = (a[k + j] - c * b[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _modp_irreducible(modulus, p) -> bool:
    e = len(modulus) - 1
    if e < 1 or modulus[-1] == 0:
        return False
    if e == 1:
        return True
    # trial division by all monic polynomials of degree 1..e//2
    for d in range(1, e // 2 + 1):
        for idx in range(p**d):
            div = []
            k = idx
            for _ in range(d):
                div.append(k % p)
                k //= p
            div.append(1)
            _, rem = _modp_poly_divmod(modulus, div, p)
            if not rem:
                return False
    return True


class Fq:
    """The finite field F_q with q = p^e, acting on integer element indices."""

    __slots__ = ("p", "e", "q", "modulus", "_add", "_mul", "_neg", "_inv",
                 "_sqrt", "_asroot", "_hashv")

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not _is_prime(p):
            raise PreconditionError(f"characteristic {p} is not prime")
        if e < 1:
            raise PreconditionError("extension degree must be >= 1")
        if e == 1:
            modulus = (0, 1)
        else:
            if modulus is None:
                raise PreconditionError(
                    "an irreducible degree-e modulus over F_p is required for e > 1")
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] == 0:
                raise PreconditionError("modulus must have degree e")
            if modulus[-1] != 1:
                inv = pow(modulus[-1], p - 2, p)
                modulus = tuple((c * inv) % p for c in modulus)
            if not _modp_irreducible(modulus, p):
                raise PreconditionError("modulus is reducible over F_p")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        self._hashv = hash((p, e, modulus))
        if self.q > _TABLE_CAP:
            raise PreconditionError(f"field size {self.q} above table cap {_TABLE_CAP}")
        self._build_tables()

    # -- element indices <-> coefficient vectors ------------------------------

    def vector(self, a: int):
        p, e = self.p, self.e
        return tuple((a // p**i) % p for i in range(e))

    def index(self, vec) -> int:
        p = self.p
        return sum((int(c) % p) * p**i for i, c in enumerate(vec))

    def _build_tables(self):
        p, q, e = self.p, self.q, self.e
        vecs = [self.vector(a) for a in range(q)]
        self._add = [tuple(self.index(tuple((x + y) % p for x, y in zip(vecs[a], vecs[b])))
                           for b in range(q)) for a in range(q)]
        if e == 1:
            self._mul = [tuple((a * b) % p for b in range(q)) for a in range(q)]
        else:
            self._mul = [tuple(self.index(_vec_mul_mod(vecs[a], vecs[b], self.modulus, p))
                               for b in range(q)) for a in range(q)]
        self._neg = tuple(self.index(tuple((-x) % p for x in vecs[a])) for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = tuple(inv)
        sqrt = [None] * q
        for b in range(q):
            s = self._mul[b][b]
            if sqrt[s] is None:
                sqrt[s] = b
        self._sqrt = tuple(sqrt)
        if p == 2:
            asr = [None] * q
            for y in range(q):
                c = self._add[self._mul[y][y]][y]
                if asr[c] is None:
                    asr[c] = y
            self._asroot = tuple(asr)
        else:
            self._asroot = None

    # -- arithmetic on indices -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        r = 1
        while k:
            if k & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            k >>= 1
        return r

    def sqrt(self, a: int):
        """Canonical square root: the root of least index, or None."""
        return self._sqrt[a]

    def is_square(self, a: int) -> bool:
        return self._sqrt[a] is not None

    def artin_schreier_root(self, c: int):
        """Least y with y^2 + y = c (characteristic 2 only), or None."""
        if self.p != 2:
            raise PreconditionError("Artin-Schreier roots require characteristic 2")
        return self._asroot[c]

    def from_int(self, n: int) -> int:
        """Embed an integer via its residue in the prime subfield."""
        return n % self.p

    def elements(self):
        return range(self.q)

    # -- misc -------------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Fq)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self):
        return self._hashv

    def __repr__(self):
        return f"Fq({self.p})" if self.e == 1 else f"Fq({self.p}^{self.e})"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> "Fq":
        e = int(d.get("e", 1))
        return cls(int(d["p"]), e, d.get("modulus") if e > 1 else None)


@dataclass(frozen=True)
class FieldElem:
    """A field element as its coefficient vector view; `index` is the canonical id."""

    field: Fq
    index: int

    @property
    def coeffs(self):
        return self.field.vector(self.index)

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class AbsValue:
    """A value q^exponent, or zero.  `exponent` is meaningful only when zero is False."""

    zero: bool
    exponent: int = 0

    @classmethod
    def of_exponent(cls, nu) -> "AbsValue":
        return cls(False, nu)

    @classmethod
    def null(cls) -> "AbsValue":
        return cls(True, 0)

    def __mul__(self, other: "AbsValue") -> "AbsValue":
        if self.zero or other.zero:
            return AbsValue.null()
        return AbsValue(False, self.exponent + other.exponent)

    def __truediv__(self, other: "AbsValue") -> "AbsValue":
        if other.zero:
            raise ZeroDivisionError("division by zero absolute value")
        if self.zero:
            return AbsValue.null()
        return AbsValue(False, self.exponent - other.exponent)

    def pow_int(self, k: int) -> "AbsValue":
        if self.zero:
            if k <= 0:
                raise ZeroDivisionError("nonpositive power of zero absolute value")
            return self
        return AbsValue(False, self.exponent * k)

    def _key(self):
        # zero sorts below every q^nu
        return (0, 0) if self.zero else (1, self.exponent)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __str__(self):
        return "0" if self.zero else f"q^{self.exponent}"


class Poly:
    """Immutable polynomial over F_q; coefficients ascend by power of T."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Fq, coeffs=()):
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:n])

    # -- constructors ------------------------------------------------------------

    @classmethod
    def zero(cls, field: Fq) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Fq) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: Fq, c: int) -> "Poly":
        return cls(field, (c % field.q,))

    @classmethod
    def T(cls, field: Fq) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: Fq, c: int, k: int) -> "Poly":
        return cls(field, (0,) * k + (c,))

    @classmethod
    def from_indices(cls, field: Fq, idxs) -> "Poly":
        for c in idxs:
            if not 0 <= c < field.q:
                raise PreconditionError(f"coefficient index {c} out of range for {field!r}")
        return cls(field, tuple(idxs))

    @classmethod
    def from_ints(cls, field: Fq, ints) -> "Poly":
        return cls(field, tuple(field.from_int(c) for c in ints))

    # -- structure ---------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.field.inv(self.lc()))

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = F._add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add[out[i]][c]
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        neg = self.field._neg
        return Poly(self.field, tuple(neg[c] for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly.zero(self.field)
        mul = self.field._mul
        return Poly(self.field, tuple(mul[c][x] for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by T^k (k >= 0)."""
        if self.is_zero or k == 0:
            return self
        return Poly(self.field, (0,) * k + self.coeffs)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        add, mul = F._add, F._mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                row = mul[ca]
                for j, cb in enumerate(b):
                    if cb:
                        k = i + j
                        out[k] = add[out[k]][row[cb]]
        return Poly(F, out)

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise PreconditionError("negative polynomial power")
        r = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero:
            raise PreconditionError("division by zero polynomial")
        if self.is_zero:
            return Poly.zero(F), Poly.zero(F)
        add, mul, neg = F._add, F._mul, F._neg
        db = other.degree
        inv_lb = F.inv(other.lc())
        rem = list(self.coeffs)
        if len(rem) - 1 < db:
            return Poly.zero(F), self
        quot = [0] * (len(rem) - db)
        bo = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                c = mul[c][inv_lb]
                quot[k - db] = c
                for j in range(db + 1):
                    rem[k - db + j] = add[rem[k - db + j]][neg[mul[c][bo[j]]]]
        return Poly(F, quot), Poly(F, rem[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for k in range(1, len(self.coeffs)):
            out.append(F.mul(F.from_int(k), self.coeffs[k]))
        return Poly(F, out)

    def eval_elem(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    # -- ordering / identity --------------------------------------------------------

    def sort_key(self):
        return (len(self.coeffs), self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def to_json(self):
        return list(self.coeffs)

    @classmethod
    def from_json(cls, field: Fq, data) -> "Poly":
        return cls.from_indices(field, [int(c) for c in data])


# -- module-level operations -------------------------------------------------------


def poly_divmod(a: Poly, b: Poly):
    """Euclidean division: a = quot*b + rem with deg rem < deg b."""
    return divmod(a, b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; rejects the (0, 0) pair."""
    if a.is_zero and b.is_zero:
        raise PreconditionError("gcd of two zero polynomials")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def abs_value(x) -> AbsValue:
    """|f| = q^{deg f} for a polynomial, |f/g| = q^{deg f - deg g} for a pair."""
    if isinstance(x, Poly):
        return AbsValue.null() if x.is_zero else AbsValue(False, x.degree)
    f, g = x
    if g.is_zero:
        raise PreconditionError("rational with zero denominator")
    if f.is_zero:
        return AbsValue.null()
    return AbsValue(False, f.degree - g.degree)


def poly_exact_sqrt(a: Poly):
    """The polynomial square root of a, or None if a is not a square."""
    F = a.field
    if a.is_zero:
        return Poly.zero(F)
    d = a.degree
    if d % 2:
        return None
    if F.p == 2:
        out = []
        for k in range(0, d + 1, 2):
            if k + 1 <= d and a.coeff(k + 1) != 0:
                return None
            out.append(F.sqrt(a.coeff(k)))
        s = Poly(F, out)
        return s if (s * s) == a else None
    r = F.sqrt(a.lc())
    if r is None:
        return None
    m = d // 2
    s = [0] * (m + 1)
    s[m] = r
    inv2r = F.inv(F.mul(F.from_int(2), r))
    for k in range(m - 1, -1, -1):
        acc = a.coeff(m + k)
        for i in range(k + 1, m):
            j = m + k - i
            if k < j <= m:
                acc = F.sub(acc, F.mul(s[i], s[j]))
        s[k] = F.mul(acc, inv2r)
    cand = Poly(F, s)
    return cand if (cand * cand) == a else None


# -- parsing / formatting ------------------------------------------------------------

_TERM_RE = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(T)(?:\s*\^\s*(\d+))?\s*$|^\s*(\d+)\s*$")


def parse_poly(field: Fq, text: str) -> Poly:
    """Parse a polynomial literal such as 'T^2+2T+1', '-T+3', or '0'.

    Integer coefficients are reduced into the prime subfield; for extension
    fields a coefficient may also be given as an element index in [0, q).
    """
    s = text.replace(" ", "")
    if not s:
        raise PreconditionError("empty polynomial literal")
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs = {}
    for raw in s.split("+"):
        if not raw:
            raise PreconditionError(f"malformed polynomial literal {text!r}")
        negate = raw.startswith("-")
        if negate:
            raw = raw[1:]
        m = _TERM_RE.match(raw)
        if not m:
            raise PreconditionError(f"malformed term {raw!r} in {text!r}")
        if m.group(4) is not None:
            c, k = int(m.group(4)), 0
        else:
            c = int(m.group(1)) if m.group(1) else 1
            k = int(m.group(3)) if m.group(3) else 1
        if c >= field.q or field.e == 1:
            c = field.from_int(c)
        if negate:
            c = field.neg(c)
        coeffs[k] = field.add(coeffs.get(k, 0), c)
    deg = max(coeffs) if coeffs else 0
    return Poly(field, tuple(coeffs.get(k, 0) for k in range(deg + 1)))


def format_poly(poly: Poly) -> str:
    if poly.is_zero:
        return "0"
    parts = []
    for k in range(len(poly.coeffs) - 1, -1, -1):
        c = poly.coeffs[k]
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            parts.append(f"{head}T" if k == 1 else f"{head}T^{k}")
    return "+".join(parts)
