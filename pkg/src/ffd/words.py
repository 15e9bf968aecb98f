"""Combinatorics on words: complexity, prefix-repetition analysis, the
low-complexity factorisation, and the sequence generators the harness feeds
into continued fractions and digit expansions.

Symbols are opaque hashable ids; experiment code maps them to partial
quotients or to field digits.  Indexing conventions are carried explicitly:
quotient words are 1-based, digit words 0-based.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, PrecisionError


@dataclass
class Word:
    """A materialised prefix of an infinite word over a finite alphabet."""

    symbols: list
    alphabet: tuple
    index_base: int = 1  # 1 for quotient words, 0 for digit words

    def __post_init__(self):
        bad = {s for s in self.symbols} - set(self.alphabet)
        if bad:
            raise PreconditionError(f"symbols {bad} outside the alphabet")

    def __len__(self):
        return len(self.symbols)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "symbols": list(self.symbols),
                "base": self.index_base}


def complexity(seq, n: int) -> int:
    """Number of distinct length-n factors of the available prefix."""
    if n < 1:
        raise PreconditionError("factor length must be >= 1")
    seq = list(seq)
    if n > len(seq):
        return 0
    return len({tuple(seq[i:i + n]) for i in range(len(seq) - n + 1)})


def power_word(V, w: Fraction):
    """V^w: floor(w) copies of V followed by the prefix of ceil(frac*|V|) letters."""
    V = list(V)
    if not V:
        raise PreconditionError("V must be nonempty")
    if w < 0:
        raise PreconditionError("exponent must be >= 0")
    k = math.floor(w)
    frac = w - k
    extra = math.ceil(frac * len(V))
    return V * k + V[:extra]


@dataclass
class RepetitionWitness:
    """A factorisation U V^w certifying prefix repetition."""

    U: list
    V: list
    w: Fraction

    @property
    def rep_len(self) -> int:
        return len(self.U) + len(power_word(self.V, self.w))

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.rep_len, len(self.U) + len(self.V))

    def is_prefix_of(self, seq) -> bool:
        pat = list(self.U) + power_word(self.V, self.w)
        seq = list(seq)
        return len(pat) <= len(seq) and seq[:len(pat)] == pat


def dio_estimate(seq) -> dict:
    """Exact maximum of |U V^w| / |U V| over factorisations of the prefix.

    Computed by minimal-period analysis (failure function) of every suffix;
    the result is a certified lower bound for the repetition exponent of the
    infinite word and is monotone nondecreasing in the prefix length.
    """
    seq = list(seq)
    L = len(seq)
    if L == 0:
        raise PreconditionError("empty prefix")
    best = None  # (ratio, u, per, l)
    for u in range(L):
        s = seq[u:]
        m = len(s)
        pi = [0] * m
        k = 0
        for i in range(1, m):
            while k and s[i] != s[k]:
                k = pi[k - 1]
            if s[i] == s[k]:
                k += 1
            pi[i] = k
        for end in range(1, m + 1):
            per = end - pi[end - 1]
            ell = u + end
            ratio = Fraction(ell, u + per)
            if best is None or ratio > best[0]:
                best = (ratio, u, per, ell)
    ratio, u, per, ell = best
    wit = RepetitionWitness(seq[:u], seq[u:u + per], Fraction(ell - u, per))
    return {"rho": ratio, "witness": wit}


def dio_witnesses(seq, min_ratio: Fraction = Fraction(1)) -> list:
    """The best witness for every repetition length, ratios >= min_ratio.

    Sorted by increasing repetition length |U V^w|; useful for building
    approximant chains with strictly increasing repetition lengths.
    """
    seq = list(seq)
    L = len(seq)
    per_len: dict = {}
    for u in range(L):
        s = seq[u:]
        m = len(s)
        pi = [0] * m
        k = 0
        for i in range(1, m):
            while k and s[i] != s[k]:
                k = pi[k - 1]
            if s[i] == s[k]:
                k += 1
            pi[i] = k
        for end in range(1, m + 1):
            per = end - pi[end - 1]
            ell = u + end
            key = (u + per)
            cand = (Fraction(ell, u + per), u, per, ell)
            old = per_len.get(ell)
            if old is None or cand[0] > old[0]:
                per_len[ell] = cand
    out = []
    for ell in sorted(per_len):
        ratio, u, per, _ = per_len[ell]
        if ratio >= min_ratio:
            out.append(RepetitionWitness(seq[:u], seq[u:u + per],
                                         Fraction(ell - u, per)))
    return out


def detect_period(seq):
    """(start, length) of an eventual period persisting to the window end,
    or None.

    The periodic tail must contain two full periods and cover at least a
    third of the window, so short accidental repetitions at the window edge
    do not flag an aperiodic word.
    """
    seq = list(seq)
    L = len(seq)
    for s in range(1, L // 2 + 1):
        for r in range(0, L - 2 * s + 1):
            if 3 * (L - r) < L:
                break
            if all(seq[i] == seq[i + s] for i in range(r, L - s)):
                return (r, s)
    return None


# -- the low-complexity factorisation ------------------------------------------------


def combi_factorize(seq, kappa: int, n: int) -> dict:
    """A witness U V^w built from a repeated length-n factor in the first
    (kappa+1)n symbols, following the overlap / no-overlap construction.

    Requires p(seq, n) <= kappa*n on the window (guaranteed by hypothesis for
    low-complexity words); raises when no length-n factor repeats.
    """
    seq = list(seq)
    window = (kappa + 1) * n
    if len(seq) < window:
        raise PreconditionError(f"prefix of length >= {window} required")
    first_seen: dict = {}
    pair = None
    for j in range(window - n + 1):
        fac = tuple(seq[j:j + n])
        if fac in first_seen:
            pair = (first_seen[fac], j)
            break
        first_seen[fac] = j
    if pair is None:
        raise PreconditionError(
            f"no repeated length-{n} factor in the window: p(a,n) > kappa*n")
    i, j = pair
    c = j - i
    while i > 0 and seq[i - 1] == seq[i - 1 + c]:
        i -= 1
    j = i + c
    if c >= n:
        U = seq[:i]
        V = seq[i:j]
        w = Fraction(c + n, c)
        case = "disjoint"
    else:
        d = Fraction(n, c)
        k = math.ceil(d / 2)
        U = seq[:i]
        V = seq[i:i + c] * k
        w = Fraction(n + c, c * k)
        case = "overlap"
    wit = RepetitionWitness(U, V, w)
    if not wit.is_prefix_of(seq):
        raise PreconditionError("internal: constructed witness is not a prefix")
    return {"witness": wit, "case": case, "occurrences": (i, j)}


def verify_repetition_properties(wit: RepetitionWitness, kappa: int, n: int,
                                 seq) -> dict:
    """Mechanical re-check of the seven factorisation properties, using only
    the witness and the word prefix."""
    u, v = len(wit.U), len(wit.V)
    ratio = wit.ratio
    checks = {
        "i_prefix": wit.is_prefix_of(seq),
        "ii_U_bound": u <= 2 * kappa * v,
        "iii_V_range": 2 * v >= n and v <= kappa * n,
        "iv_last_letters": (u == 0) or (wit.U[-1] != wit.V[-1]),
        "v_ratio": ratio >= 1 + Fraction(1, 4 * kappa + 2),
        "vi_UV": u + v <= (kappa + 1) * n - 1,
        "vii_UUV": 2 * u + v <= (2 * kappa + 1) * n - 2,
    }
    checks["all"] = all(checks.values())
    return checks


# -- explicit sequences ------------------------------------------------------------------


def _floor_powers(w: Fraction, N: int):
    """{floor(w^i) : i >= 0} intersected with [1, N]."""
    out = []
    x = Fraction(1)
    while True:
        f = math.floor(x)
        if f > N:
            break
        out.append(f)
        x *= w
    return out


def check_main4_threshold(w: Fraction, char: int) -> bool:
    """Exact threshold test: w above the larger root of x^2-5x+2 (odd
    characteristic) or of x^2-9x+4 (characteristic 2)."""
    if char == 2:
        return w * w - 9 * w + 4 > 0 and 2 * w > 9
    return w * w - 5 * w + 2 > 0 and 2 * w > 5


def gen_main4(w: Fraction, char: int, b, c, N: int,
              check_threshold: bool = True) -> Word:
    """The two-letter sequence with c exactly at positions floor(w^i), i >= 0.

    The position rule makes sense for any w > 1; the exponent statements need
    w above the characteristic-dependent threshold, which is enforced unless
    check_threshold is False.
    """
    w = Fraction(w)
    if b == c:
        raise PreconditionError("the two symbols must be distinct")
    if w <= 1:
        raise PreconditionError("w > 1 required")
    if check_threshold and not check_main4_threshold(w, char):
        raise PreconditionError(
            f"w={w} is below the admissible threshold for characteristic {char}")
    if N < 1:
        raise PreconditionError("N >= 1 required")
    cpos = set(_floor_powers(w, N))
    return Word([c if pos in cpos else b for pos in range(1, N + 1)],
                alphabet=(b, c), index_base=1)


def main5_block_count(w: Fraction, eta: Fraction, i: int) -> int:
    """floor((floor(w^(i+1)) - floor(w^i - 1)) / floor(eta w^i)) for i >= 1."""
    w, eta = Fraction(w), Fraction(eta)
    wi = w**i
    den = math.floor(eta * wi)
    if den < 1:
        raise PreconditionError(f"floor(eta*w^{i}) = 0: block length undefined")
    return math.floor(Fraction(math.floor(w * wi) - math.floor(wi - 1), den))


def gen_main5(w: Fraction, eta: Fraction, b, c, d, N: int) -> Word:
    """The three-letter sequence: c at floor(w^i); d at floor(w^j)+m*floor(eta w^j)
    for 1 <= m <= m_j (where not already a c-position); b elsewhere."""
    w, eta = Fraction(w), Fraction(eta)
    if len({b, c, d}) != 3:
        raise PreconditionError("the three symbols must be distinct")
    if w < 25:
        raise PreconditionError("w >= 25 required")
    if not (eta > 0 and 16 * eta * eta < w):
        raise PreconditionError("0 < eta < sqrt(w)/4 required")
    if N < 1:
        raise PreconditionError("N >= 1 required")
    cpos = set(_floor_powers(w, N))
    dpos = set()
    j = 1
    wj = w
    while math.floor(wj) <= N:
        L = math.floor(eta * wj)
        if L >= 1:
            mj = main5_block_count(w, eta, j)
            base = math.floor(wj)
            for m in range(1, mj + 1):
                pos = base + m * L
                if pos > N:
                    break
                if pos not in cpos:
                    dpos.add(pos)
        j += 1
        wj *= w
    out = []
    for pos in range(1, N + 1):
        if pos in cpos:
            out.append(c)
        elif pos in dpos:
            out.append(d)
        else:
            out.append(b)
    return Word(out, alphabet=(b, c, d), index_base=1)


# -- automatic sequences --------------------------------------------------------------------


@dataclass
class Automaton:
    """Deterministic automaton reading base-k digits most significant first."""

    k: int
    states: tuple
    delta: dict          # (state, digit) -> state
    q0: object
    output: dict         # state -> symbol

    def __post_init__(self):
        for s in self.states:
            for dgt in range(self.k):
                if (s, dgt) not in self.delta:
                    raise PreconditionError(f"transition missing for {(s, dgt)}")
            if s not in self.output:
                raise PreconditionError(f"output missing for state {s}")

    def term(self, n: int):
        digits = []
        while n:
            digits.append(n % self.k)
            n //= self.k
        state = self.q0
        for dgt in reversed(digits):
            state = self.delta[(state, dgt)]
        return self.output[state]


def automaton_run(A: Automaton, N: int) -> Word:
    symbols = [A.term(n) for n in range(N)]
    return Word(symbols, alphabet=tuple(dict.fromkeys(A.output.values())), index_base=0)


def kernel_cardinality(oracle, k: int, depth: int) -> int:
    """Number of distinct kernel sequences (a_{k^i n + j}), with sequence
    equality decided on the first `depth` terms (a depth-certified count)."""
    if k < 2 or depth < 1:
        raise PreconditionError("k >= 2 and depth >= 1 required")
    def signature(i, j):
        step = k**i
        return tuple(oracle(step * t + j) for t in range(depth))
    seen = {}
    queue = [(0, 0)]
    seen[signature(0, 0)] = (0, 0)
    while queue:
        i, j = queue.pop(0)
        step = k**i
        for t in range(k):
            child = (i + 1, j + t * step)
            sig = signature(*child)
            if sig not in seen:
                seen[sig] = child
                queue.append(child)
    return len(seen)


def thue_morse_automaton(zero=0, one=1) -> Automaton:
    return Automaton(k=2, states=("even", "odd"),
                     delta={("even", 0): "even", ("even", 1): "odd",
                            ("odd", 0): "odd", ("odd", 1): "even"},
                     q0="even", output={"even": zero, "odd": one})


# -- morphic sequences ----------------------------------------------------------------------


def _erasable_letters(sigma: dict) -> set:
    erasable = {a for a, img in sigma.items() if len(img) == 0}
    changed = True
    while changed:
        changed = False
        for a, img in sigma.items():
            if a not in erasable and img and all(x in erasable for x in img):
                erasable.add(a)
                changed = True
    return erasable


def is_prolongable(sigma: dict, seed) -> bool:
    img = list(sigma.get(seed, ()))
    if not img or img[0] != seed or len(img) < 2:
        return False
    return not all(x in _erasable_letters(sigma) for x in img[1:])


def morphic_generate(sigma: dict, seed, N: int, coding: dict = None) -> Word:
    """First N letters of the coded fixed point of sigma, prolongable on seed."""
    if not is_prolongable(sigma, seed):
        raise PreconditionError("morphism is not prolongable on the seed "
                                "(or the tail is eventually erased)")
    s = [seed]
    while len(s) < N:
        nxt = []
        for x in s:
            nxt.extend(sigma[x])
        if len(nxt) <= len(s):
            raise PreconditionError("fixed point stopped growing")
        s = nxt
    s = s[:N]
    if coding is not None:
        s = [coding[x] for x in s]
        alphabet = tuple(dict.fromkeys(coding.values()))
    else:
        alphabet = tuple(sorted(sigma.keys(), key=repr))
    return Word(s, alphabet=alphabet, index_base=0)


def primitivity_exponent(sigma: dict):
    """(True, n) when some power sigma^n maps every letter to a word containing
    every letter; (False, None) otherwise."""
    letters = sorted(sigma.keys(), key=repr)
    idx = {a: i for i, a in enumerate(letters)}
    m = len(letters)
    M = [[False] * m for _ in range(m)]
    for a, img in sigma.items():
        for x in img:
            M[idx[a]][idx[x]] = True
    cur = [row[:] for row in M]
    bound = (m - 1) * (m - 1) + 1 if m > 1 else 1
    for n in range(1, bound + 1):
        if all(all(row) for row in cur):
            return True, n
        cur = [[any(cur[i][t] and M[t][j] for t in range(m)) for j in range(m)]
               for i in range(m)]
    return False, None


def fibonacci_morphism():
    return {"a": ("a", "b"), "b": ("a",)}


# -- Sturmian sequences -----------------------------------------------------------------------


def sturmian_generate(theta_quotients, rho: Fraction, N: int, variant: str = "floor",
                      coding: dict = None) -> Word:
    """(tau(s_n))_{n=1..N} for s_n the difference of consecutive floors (or
    ceilings) of n*theta + rho.

    theta in (0,1) is given by the integer partial quotients of its real
    continued fraction [0; a_1, a_2, ...]; every floor is decided exactly by
    bracketing between consecutive convergents, and an undecidable index
    raises PrecisionError naming it.
    """
    quots = list(theta_quotients)
    if len(quots) < 2:
        raise PreconditionError("need at least two partial quotients of theta")
    if any((not isinstance(a, int)) or a < 1 for a in quots):
        raise PreconditionError("theta quotients must be positive integers")
    rho = Fraction(rho)
    if variant not in ("floor", "ceil"):
        raise PreconditionError("variant must be 'floor' or 'ceil'")
    h_prev, h_cur = 1, 0   # numerators of [0; a1..]
    k_prev, k_cur = 0, 1
    convs = []
    for a in quots:
        h_prev, h_cur = h_cur, a * h_cur + h_prev
        k_prev, k_cur = k_cur, a * k_cur + k_prev
        convs.append(Fraction(h_cur, k_cur))
    lo, hi = sorted(convs[-2:])

    def floor_of(nv: int):
        a_val = nv * lo + rho
        b_val = nv * hi + rho
        fl = math.floor(a_val)
        if b_val <= fl + 1:
            return fl
        raise PrecisionError(f"theta precision insufficient to decide index {nv}")

    def ceil_of(nv: int):
        # n*theta + rho is irrational for n >= 1, so ceil = floor + 1
        return floor_of(nv) + 1

    f = floor_of if variant == "floor" else ceil_of
    raw = [f(n + 1) - f(n) for n in range(1, N + 1)]
    if coding is None:
        coding = {0: 0, 1: 1}
    out = [coding[x] for x in raw]
    return Word(out, alphabet=tuple(dict.fromkeys(coding.values())), index_base=1)


def golden_ratio_quotients(count: int):
    """The slope (sqrt(5)-1)/2 = [0; 1, 1, 1, ...]."""
    return [1] * count


# -- generator specs (tagged JSON) ---------------------------------------------------------------


def word_from_spec(spec: dict) -> Word:
    """Build a word from a tagged generator spec.

    Types: main4 {w, char, b, c, N}; main5 {w, eta, b, c, d, N};
    thue_morse {N, zero, one}; fibonacci {N, zero, one};
    sturmian {theta_quotients, rho, N, variant}; literal {symbols, base}.
    Rational parameters are [num, den] pairs or integers.
    """
    kind = spec.get("type")
    frac = lambda v: Fraction(v[0], v[1]) if isinstance(v, (list, tuple)) else Fraction(v)
    if kind == "main4":
        return gen_main4(frac(spec["w"]), int(spec.get("char", 3)),
                         spec.get("b", "b"), spec.get("c", "c"), int(spec["N"]))
    if kind == "main5":
        return gen_main5(frac(spec["w"]), frac(spec["eta"]), spec.get("b", "b"),
                         spec.get("c", "c"), spec.get("d", "d"), int(spec["N"]))
    if kind == "thue_morse":
        A = thue_morse_automaton(spec.get("zero", 0), spec.get("one", 1))
        return automaton_run(A, int(spec["N"]))
    if kind == "fibonacci":
        w = morphic_generate(fibonacci_morphism(), "a", int(spec["N"]),
                             coding={"a": spec.get("zero", "a"),
                                     "b": spec.get("one", "b")})
        return w
    if kind == "sturmian":
        return sturmian_generate(list(spec["theta_quotients"]),
                                 frac(spec.get("rho", 0)), int(spec["N"]),
                                 spec.get("variant", "floor"),
                                 spec.get("coding"))
    if kind == "literal":
        syms = list(spec["symbols"])
        return Word(syms, alphabet=tuple(dict.fromkeys(syms)),
                    index_base=int(spec.get("base", 1)))
    raise PreconditionError(f"unknown generator type {kind!r}")
