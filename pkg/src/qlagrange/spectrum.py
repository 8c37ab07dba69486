"""Quadratic approximation constants and Lagrange spectra.

All values are handled as exponents: the constant c_alpha(f) = q^-m is the
integer m, so larger exponents mean better approximation.  For a quadratic f
the liminf defining c_alpha(f) is attained on the periodic part of f, and
only orbit elements that copy a prefix of f followed by a tail of alpha's
orbit need to be examined; the exponent for such an approximant is read off
the letters directly.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .algebra import Poly, diff_degree
from .cfword import (
    CFWord,
    TwistSpec,
    canonicalize,
    cf_stats,
    equivalent,
    primitive_root,
    select_tau,
    tail_variants,
)
from .errors import HallBoundViolation, InTheta, NotQuadratic, ThetaMembership

WORKERS_ENV = "QLAGRANGE_WORKERS"


@dataclass(frozen=True)
class ApproxConstant:
    """c = q^-exponent, or the zero constant (exponent None).

    Zero never comes out of :func:`approx_constant`; it only appears in
    spectrum reports, where it is recorded as known rather than computed.
    """

    exponent: Optional[int]

    @property
    def is_zero(self):
        return self.exponent is None

    def value(self):
        return "0" if self.exponent is None else f"q^-{self.exponent}"


ZERO_AXIOMATIC = ApproxConstant(None)


@dataclass(frozen=True)
class MatchContext:
    """How an approximant at position r overlaps the orbit tail word."""

    r: int
    t: int
    s_prime_letter: Poly
    last_letter: Poly


@dataclass(frozen=True)
class SpectrumReport:
    q: int
    alpha: str
    alpha_period: tuple
    exponents_below_bound: tuple
    hall_start: int
    hall_bound_coarse: int
    hurwitz_exponent: int
    verified_through: int
    contains_zero: bool = True
    zero_is_axiomatic: bool = True
    witnesses: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        return {
            "q": self.q,
            "alpha": self.alpha,
            "exponents_below_bound": list(self.exponents_below_bound),
            "hall_start": self.hall_start,
            "hall_bound_coarse": self.hall_bound_coarse,
            "hurwitz_exponent": self.hurwitz_exponent,
            "contains_zero": self.contains_zero,
            "zero_is_axiomatic": self.zero_is_axiomatic,
        }


def _quadratic(w, name):
    if not isinstance(w, CFWord) or not w.period:
        raise NotQuadratic(f"{name} must be a quadratic CF word (nonempty period)")
    return canonicalize(w)


def _bracket(x, y):
    """deg x + deg y - deg(x - y): the contribution of one mismatched pair."""
    return x.deg + y.deg - diff_degree(x, y)


# -- single approximants --------------------------------------------------------


def match_context(f, r, tau):
    """Locate the first mismatch between a_{r+1}, a_{r+2}, ... and the tail of
    ``tau``; None when a_r equals tau's last period letter (the approximant
    is then not in canonical form and is counted at another rotation)."""
    block = tau.period
    L = len(block)
    last = block[-1]
    if f.letter(r) == last:
        return None
    limit = max(0, f.r - r) + f.s + L  # Fine-Wilf
    t = 0
    while f.letter(r + t + 1) == block[t % L]:
        t += 1
        if t >= limit:
            raise ThetaMembership(f"match at position {r} exceeds {limit} letters")
    return MatchContext(r, t, block[t % L], last)


def approximant_exponent(f, r, tau):
    """-log_q of |f - alpha_r| h(alpha_r) for alpha_r = [a0; a1..ar, tau tail];
    None (skip) when a_r equals the last letter of tau's period."""
    if r < 1:
        raise ValueError("approximant position must be >= 1")
    if not f.period:
        raise NotQuadratic("f must be quadratic")
    mc = match_context(f, r, tau)
    if mc is None:
        return None
    ar = f.letter(r)
    nxt = f.letter(r + mc.t + 1)
    matched = sum(f.letter(r + i).deg for i in range(1, mc.t + 1))
    return 2 * matched + _bracket(ar, mc.last_letter) + _bracket(nxt, mc.s_prime_letter)


def ell(f, alpha_period, spec):
    """Exponent of ell_{j,a}(f) (or ell'_{j,a}): the largest approximant
    exponent over one period of f's tail.  None if every position skips."""
    f = _quadratic(f, "f")
    tau = select_tau(alpha_period, spec)
    best = None
    for r in range(f.r + 1, f.r + f.s + 1):
        e = approximant_exponent(f, r, tau)
        if e is not None and (best is None or e > best):
            best = e
    return best


# -- fast path over interned letters -----------------------------------------------


class _Alphabet:
    """Interns polynomials as small ints and memoises degrees and brackets."""

    def __init__(self):
        self.polys = []
        self.ids = {}
        self.degs = []
        self._br = {}

    def id(self, poly):
        i = self.ids.get(poly)
        if i is None:
            i = self.ids[poly] = len(self.polys)
            self.polys.append(poly)
            self.degs.append(poly.deg)
        return i

    def word(self, polys):
        return tuple(self.id(p) for p in polys)

    def bracket(self, i, j):
        key = (i, j)
        v = self._br.get(key)
        if v is None:
            v = self._br[key] = _bracket(self.polys[i], self.polys[j])
        return v


def _periodic_exponent(alph, word, variants):
    """Max approximant exponent for f = [0; overline(word)] over all tail
    variants (tuples of letter ids).  Raises ThetaMembership if some variant
    matches f's tail forever."""
    n = len(word)
    degs = alph.degs
    best = None
    for blk in variants:
        L = len(blk)
        last = blk[-1]
        limit = n + L
        for r in range(n):
            ar = word[r]
            if ar == last:
                continue
            t = total = 0
            pos = (r + 1) % n
            x = word[pos]
            y = blk[0]
            while x == y:
                total += degs[x]
                t += 1
                if t >= limit:
                    raise ThetaMembership("f lies in the orbit of alpha")
                pos = (pos + 1) % n
                x = word[pos]
                y = blk[t % L]
            val = 2 * total + alph.bracket(ar, last) + alph.bracket(x, y)
            if best is None or val > best:
                best = val
    return best


class AlphaContext:
    """Precomputed orbit data for one canonical quadratic alpha."""

    def __init__(self, alpha):
        alpha = _quadratic(alpha, "alpha")
        self.alpha = alpha
        self.ctx = alpha.ctx
        self.period = alpha.period
        self.alph = _Alphabet()
        self.variant_polys = tail_variants(self.period)
        self.variants = [self.alph.word(v) for v in self.variant_polys]
        self.letter_ids = sorted({i for v in self.variants for i in v})
        self.d = max(x.deg for x in self.period)
        self._reps = None

    def exponent_of_periodic(self, word_ids):
        return _periodic_exponent(self.alph, word_ids, self.variants)

    def type_representatives(self):
        """One polynomial of degree 1..d+1 per class of polynomials that
        compare identically (equality and deg of difference) with every
        letter of every orbit tail.  Approximation exponents of words built
        from these letters only depend on that class."""
        if self._reps is not None:
            return self._reps
        ctx, q = self.ctx, self.ctx.q
        letters = [self.alph.polys[i] for i in self.letter_ids]
        reps = []
        for D in range(1, self.d + 2):
            tops = {tuple(reversed(b.coeffs)) for b in letters if b.deg == D}
            reps.extend(_trie_reps(ctx, D, tops, q))
        self._reps = [self.alph.id(p) for p in reps]
        return self._reps


def _trie_reps(ctx, D, tops, q):
    """Representatives of degree-D polynomials by longest common leading
    segment with each word in ``tops`` (coefficient tuples, leading first)."""
    out = []

    def walk(prefix, group):
        k = len(prefix)
        if k == D + 1:
            out.append(prefix)
            return
        used = sorted({t[k] for t in group})
        for v in used:
            walk(prefix + (v,), [t for t in group if t[k] == v])
        start = 1 if k == 0 else 0
        free = next((v for v in range(start, q) if v not in used), None)
        if free is not None:
            out.append(prefix + (free,) + (0,) * (D - k))

    walk((), sorted(tops))
    return [Poly(ctx, tuple(reversed(c))) for c in out]


@lru_cache(maxsize=64)
def alpha_context(alpha):
    return AlphaContext(alpha)


# -- constants -------------------------------------------------------------------------


def approx_constant(alpha, f):
    """c_alpha(f) for quadratic alpha, f with f outside the orbit of alpha."""
    alpha = _quadratic(alpha, "alpha")
    f = _quadratic(f, "f")
    if equivalent(f, alpha):
        raise InTheta("f lies in the PGL_2 orbit of alpha or its conjugate")
    ac = alpha_context(alpha)
    word = ac.alph.word(primitive_root(f.period))
    return ApproxConstant(ac.exponent_of_periodic(word))


def approx_constant_by_specs(alpha, f):
    """Same value via the explicit (j, a, mirrored) enumeration of ell."""
    alpha = _quadratic(alpha, "alpha")
    f = _quadratic(f, "f")
    if equivalent(f, alpha):
        raise InTheta("f lies in the PGL_2 orbit of alpha or its conjugate")
    best = None
    for mirrored in (False, True):
        for j in range(1, alpha.s + 1):
            for a in alpha.ctx.units():
                e = ell(f, alpha.period, TwistSpec(j, a, mirrored))
                if e is not None and (best is None or e > best):
                    best = e
    return ApproxConstant(best)


def hall_bound(alpha):
    """(coarse, refined): every m >= refined has q^-m in Sp(alpha)."""
    alpha = _quadratic(alpha, "alpha")
    degs = [x.deg for x in alpha.period]
    s, d = len(degs), max(degs)
    coarse = 2 * d * (s + 1)
    # rotate so a maximal letter comes last; the next letter opens the period
    follow = min(degs[(i + 1) % s] for i in range(s) if degs[i] == d)
    refined = 2 * sum(degs) + d + follow
    return coarse, refined


# -- membership ------------------------------------------------------------------------


def _canonical_rotation(word):
    n = len(word)
    return min(word[i:] + word[:i] for i in range(n))


def find_witness(alpha, m):
    """A purely periodic f with c_alpha(f) = q^-m, or None if there is none.

    Candidates are periods P1 W0 P2 where W0 is a factor of an orbit tail
    word and P1, P2 have degree <= d+1; only combinations whose designated
    approximant already has exponent m are tried.
    """
    if m < 2:
        return None
    ac = alpha_context(_quadratic(alpha, "alpha"))
    alph = ac.alph
    degs = alph.degs
    reps = ac.type_representatives()
    by_bracket = {}

    def reps_with(letter, value):
        key = (letter, value)
        if key not in by_bracket:
            table = {}
            for p in reps:
                if p != letter:
                    table.setdefault(alph.bracket(p, letter), []).append(p)
            for v, ps in table.items():
                by_bracket[(letter, v)] = ps
            for v in range(0, 2 * (degs[letter] + ac.d + 2) + 1):
                by_bracket.setdefault((letter, v), [])
        return by_bracket.get(key, [])

    seen_factor = set()
    seen_word = set()
    for blk in ac.variants:
        L = len(blk)
        last = blk[-1]
        weight = 0
        t = 0
        while True:
            if weight > m - 2:
                break
            w0 = tuple(blk[i % L] for i in range(t))
            nxt = blk[t % L]
            key = (last, w0, nxt)
            if key not in seen_factor:
                seen_factor.add(key)
                rem = m - weight
                for p1 in reps:
                    if p1 == last:
                        continue
                    x = alph.bracket(p1, last)
                    for p2 in reps_with(nxt, rem - x):
                        word = primitive_root((p1,) + w0 + (p2,))
                        cw = _canonical_rotation(word)
                        if cw in seen_word:
                            continue
                        seen_word.add(cw)
                        try:
                            e = ac.exponent_of_periodic(cw)
                        except ThetaMembership:
                            continue
                        if e == m:
                            return CFWord.periodic(tuple(alph.polys[i] for i in cw))
            weight += 2 * degs[blk[t % L]]
            t += 1
    return None


def membership(alpha, m):
    """Whether q^-m belongs to Sp(alpha)."""
    return find_witness(alpha, m) is not None


def _membership_job(args):
    alpha, m = args
    w = find_witness(alpha, m)
    return m, w


def default_workers():
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _map_memberships(alpha, ms, workers):
    jobs = [(alpha, m) for m in ms]
    if workers <= 1 or len(jobs) <= 1:
        return dict(map(_membership_job, jobs))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return dict(pool.map(_membership_job, jobs))


def hurwitz(alpha):
    """Exponent of Hw(alpha) = max Sp(alpha): the least member exponent."""
    alpha = _quadratic(alpha, "alpha")
    _, refined = hall_bound(alpha)
    for m in range(2, refined + 1):
        if membership(alpha, m):
            return m
    raise HallBoundViolation(f"no spectrum member found up to the Hall bound {refined}")


def spectrum(alpha, verification_margin=5, workers=None, max_exponent=None):
    """Full description of Sp(alpha): members below the Hall bound, the
    certified ray [hall_start, inf) and the Hurwitz exponent."""
    alpha = _quadratic(alpha, "alpha")
    workers = default_workers() if workers is None else workers
    coarse, refined = hall_bound(alpha)
    top = refined + verification_margin
    if max_exponent is not None:
        top = max(top, max_exponent)
    found = _map_memberships(alpha, range(2, top + 1), workers)
    missing = [m for m in range(refined, top + 1) if found[m] is None]
    if missing:
        raise HallBoundViolation(f"exponents {missing} >= Hall bound {refined} have no witness")
    members = sorted(m for m, w in found.items() if w is not None)
    below = tuple(m for m in members if m < refined)
    return SpectrumReport(
        q=alpha.ctx.q,
        alpha=str(alpha),
        alpha_period=alpha.period,
        exponents_below_bound=below,
        hall_start=refined,
        hall_bound_coarse=coarse,
        hurwitz_exponent=members[0],
        verified_through=top,
        witnesses={m: w for m, w in found.items() if w is not None},
    )


__all__ = [
    "AlphaContext",
    "ApproxConstant",
    "MatchContext",
    "SpectrumReport",
    "ZERO_AXIOMATIC",
    "approx_constant",
    "approx_constant_by_specs",
    "approximant_exponent",
    "cf_stats",
    "ell",
    "find_witness",
    "hall_bound",
    "hurwitz",
    "match_context",
    "membership",
    "spectrum",
]
