"""Brute-force cross-check of approximation constants.

Enumerates a finite window of the orbit PGL_2(R) . {alpha, alpha^sigma} as
explicit matrices, evaluates every orbit element as a Laurent series and
measures |f - beta| against |beta - beta^sigma| directly.  Shares nothing
with the word combinatorics in :mod:`spectrum` beyond parsing.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Poly, enumerate_polys
from .cfword import canonicalize, equivalent, minimal_polynomial
from .errors import EmptyWindow, InsufficientPrecision, InTheta, NotQuadratic, PrecisionExhausted
from .laurent import DEFAULT_PRECISION_CAP, LaurentSeries, series_from_cf
from .spectrum import approx_constant

MAX_DEG_BOUND = 4
ROOTS = ("alpha", "alpha_sigma")


def _polys_upto(ctx, deg_bound):
    """Nonzero polynomials of degree <= deg_bound, constants first."""
    out = [Poly.constant(ctx, u) for u in ctx.units()]
    if deg_bound >= 1:
        out.extend(enumerate_polys(ctx, 1, deg_bound))
    return out


def _matrices(ctx, deg_bound, leads=None):
    """Normalized (A, B, C, D) with AD - BC a nonzero constant; the first
    nonzero entry is monic so each projective class appears once."""
    polys = _polys_upto(ctx, deg_bound)
    zero = Poly.zero(ctx)
    monic = [p for p in polys if p.leading == 1]
    units = [Poly.constant(ctx, u) for u in ctx.units()]
    a_choices = [zero] + monic if leads is None else leads
    for A in a_choices:
        if A.is_zero():
            # det = -BC must be a unit: B, C constants, B monic
            for B in units:
                if B.leading != 1:
                    continue
                for C in units:
                    for D in [zero] + polys:
                        yield (A, B, C, D)
            continue
        for B in [zero] + polys:
            for C in [zero] + polys:
                bc = B * C
                for u in units:
                    D, rem = divmod(bc + u, A)
                    if rem.is_zero() and D.deg <= deg_bound:
                        yield (A, B, C, D)


def _mobius(m, x):
    A, B, C, D = m
    return (x * A + B) / (x * C + D)


@dataclass
class OrbitElement:
    matrix: tuple
    conjugate_choice: str
    beta: LaurentSeries
    beta_sigma: LaurentSeries

    @property
    def height_exponent(self):
        """-log_q |beta - beta^sigma|."""
        return (self.beta - self.beta_sigma).valuation

    def ratio_exponent_vs(self, f_series):
        """-log_q (|f - beta| / |beta - beta^sigma|)."""
        return (f_series - self.beta).valuation - self.height_exponent


class _Roots:
    """alpha and alpha^sigma as series at a given precision (cached)."""

    def __init__(self, alpha):
        self.alpha = alpha
        self.A, self.B, _ = minimal_polynomial(alpha)
        self._cache = {}

    def at(self, prec):
        r = self._cache.get(prec)
        if r is None:
            a = series_from_cf(self.alpha, prec)
            a_sigma = LaurentSeries.from_rational(-self.B, self.A, prec) - a
            r = self._cache[prec] = (a, a_sigma)
        return r


def _element(roots, matrix, choice, prec):
    a, a_sigma = roots.at(prec)
    x, y = (a, a_sigma) if choice == "alpha" else (a_sigma, a)
    return OrbitElement(matrix, choice, _mobius(matrix, x), _mobius(matrix, y))


def _start_prec(alpha, deg_bound):
    return 4 * (deg_bound + sum(max(p.deg, 0) for p in alpha.letters(0, alpha.r + alpha.s + 1)))


def _certified(roots, matrix, choice, n, cap, f=None):
    """Orbit element (and f - beta exponent) once the needed differences are
    certified nonzero; doubles the precision up to ``cap`` coefficients."""
    while True:
        try:
            el = _element(roots, matrix, choice, -n)
            h = el.height_exponent
            if f is None:
                return el, h, None
            return el, h, (f(-n) - el.beta).valuation
        except InsufficientPrecision:
            if n >= cap:
                raise PrecisionExhausted(f"orbit element {matrix} not certified at {cap} coefficients")
            n = min(2 * n, cap)


def enumerate_orbit(alpha, deg_bound, cap=DEFAULT_PRECISION_CAP):
    """Every projective class of matrices with entries of degree <= deg_bound,
    applied to both alpha and alpha^sigma."""
    if deg_bound > MAX_DEG_BOUND:
        raise ValueError(f"deg_bound must be <= {MAX_DEG_BOUND}")
    if not alpha.period:
        raise NotQuadratic("alpha must be quadratic")
    alpha = canonicalize(alpha)
    roots = _Roots(alpha)
    n = _start_prec(alpha, deg_bound)
    out = []
    for m in _matrices(alpha.ctx, deg_bound):
        for choice in ROOTS:
            el, _, _ = _certified(roots, m, choice, n, cap)
            out.append(el)
    return out


@dataclass
class Verdict:
    passed: bool
    fast_exponent: int
    max_exponent: Optional[int]
    witness: Optional[tuple]
    checked: int
    violations: list = field(default_factory=list)

    def to_dict(self):
        w = None
        if self.witness is not None:
            matrix, choice = self.witness
            w = {"matrix": [str(p) for p in matrix], "root": choice}
        return {
            "verdict": "PASS" if self.passed else "FAIL",
            "fast_exponent": self.fast_exponent,
            "max_exponent": self.max_exponent,
            "witness": w,
            "checked": self.checked,
            "violations": [
                {"matrix": [str(p) for p in m], "root": c, "exponent": e} for m, c, e in self.violations
            ],
        }


def _scan(args):
    alpha, f, deg_bound, window, leads, cap = args
    roots = _Roots(alpha)
    n = _start_prec(alpha, deg_bound)
    f_cache = {}

    def f_at(prec):
        if prec not in f_cache:
            f_cache[prec] = series_from_cf(f, prec)
        return f_cache[prec]

    lo, hi = window
    found = []
    for m in _matrices(alpha.ctx, deg_bound, leads):
        for choice in ROOTS:
            el, h, _ = _certified(roots, m, choice, n, cap)
            if not lo <= h <= hi:
                continue
            _, _, d = _certified(roots, m, choice, max(n, 2 * (hi + 8)), cap, f_at)
            found.append((m, choice, d - h))
    return found


def brute_force_check(alpha, f, deg_bound, window, workers=1, cap=DEFAULT_PRECISION_CAP):
    """Compare c_alpha(f) with every orbit element whose height exponent lies
    in ``window``.  PASS iff no element beats the constant (each has ratio
    exponent <= the fast-path exponent) and some element attains it."""
    if deg_bound > MAX_DEG_BOUND:
        raise ValueError(f"deg_bound must be <= {MAX_DEG_BOUND}")
    if not alpha.period or not f.period:
        raise NotQuadratic("alpha and f must be quadratic")
    alpha, f = canonicalize(alpha), canonicalize(f)
    if equivalent(f, alpha):
        raise InTheta("f lies in the orbit of alpha")
    fast = approx_constant(alpha, f).exponent
    ctx = alpha.ctx
    leads = [Poly.zero(ctx)] + [p for p in _polys_upto(ctx, deg_bound) if p.leading == 1]
    if workers > 1:
        chunks = [leads[i::workers] for i in range(workers)]
        jobs = [(alpha, f, deg_bound, tuple(window), c, cap) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [x for part in pool.map(_scan, jobs) for x in part]
    else:
        found = _scan((alpha, f, deg_bound, tuple(window), leads, cap))
    if not found:
        raise EmptyWindow(f"no orbit element with height exponent in {tuple(window)} at deg_bound {deg_bound}")
    found.sort(key=lambda t: (-t[2], [str(p) for p in t[0]], t[1]))
    best = found[0]
    violations = [t for t in found if t[2] > fast]
    return Verdict(
        passed=not violations and best[2] == fast,
        fast_exponent=fast,
        max_exponent=best[2],
        witness=(best[0], best[1]),
        checked=len(found),
        violations=violations,
    )


__all__ = ["OrbitElement", "Verdict", "brute_force_check", "enumerate_orbit"]
