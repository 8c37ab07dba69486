"""Truncated Laurent series in 1/Y over F_q with certified precision.

A :class:`LaurentSeries` stores the coefficients of degrees ``top_deg``,
``top_deg - 1``, ..., ``prec``; everything of degree ``>= prec`` is exact and
nothing below ``prec`` is known.  If all known coefficients vanish the series
is *uncertified*: ``coeffs`` is empty, ``top_deg == prec - 1`` and the only
knowledge is ``|f| < q^prec``.

This module is the numeric oracle: it never looks at continued-fraction
words except to evaluate them (:func:`series_from_cf`) or recover them
(:func:`cf_from_series`).
"""

import numpy as np

from .algebra import Poly
from .errors import DivisionByZero, InsufficientPrecision, PrecisionExhausted

DEFAULT_PRECISION_CAP = 2**14

# Above this length prime-field products go through numpy.
_NUMPY_THRESHOLD = 48


def _conv(ctx, a, b, n):
    """First n terms of the product of two descending coefficient lists."""
    a, b = a[:n], b[:n]
    if not a or not b:
        return [0] * n
    if ctx.e == 1 and min(len(a), len(b)) > _NUMPY_THRESHOLD:
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))[:n] % ctx.p
        out = out.tolist()
        return out + [0] * (n - len(out))
    out = [0] * n
    if ctx.e == 1:
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), n - i)):
                    out[i + j] += x * b[j]
        p = ctx.p
        return [c % p for c in out]
    add, mul = ctx.add, ctx.mul
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), n - i)):
                out[i + j] = add(out[i + j], mul(x, b[j]))
    return out


def _inv_terms(ctx, a, n):
    """First n terms of 1/a for a descending list with a[0] != 0."""
    c = ctx.inv(a[0])
    if ctx.e == 1 and n > _NUMPY_THRESHOLD:
        # Newton: g <- g - g*(a*g - 1)
        p = ctx.p
        g = [c]
        while len(g) < n:
            m = min(2 * len(g), n)
            err = _conv(ctx, a, g, m)
            err[0] = (err[0] - 1) % p
            corr = _conv(ctx, g, err, m)
            g = [(x - y) % p for x, y in zip(g + [0] * (m - len(g)), corr)]
        return g
    g = [c] + [0] * (n - 1)
    mul, sub = ctx.mul, ctx.sub
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i] and g[k - i]:
                s = ctx.add(s, mul(a[i], g[k - i]))
        g[k] = mul(sub(0, s), c)
    return g


class LaurentSeries:
    __slots__ = ("ctx", "top_deg", "coeffs", "prec")

    def __init__(self, ctx, top_deg, coeffs, prec):
        coeffs = list(coeffs)
        # drop anything below the trusted precision
        keep = top_deg - prec + 1
        if keep < len(coeffs):
            coeffs = coeffs[: max(keep, 0)]
        coeffs += [0] * (keep - len(coeffs))
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        coeffs = coeffs[i:]
        self.ctx = ctx
        self.prec = prec
        if coeffs:
            self.top_deg = top_deg - i
            self.coeffs = tuple(coeffs)
        else:
            self.top_deg = prec - 1
            self.coeffs = ()

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_poly(cls, poly, prec):
        if poly.is_zero():
            return cls(poly.ctx, prec - 1, (), prec)
        return cls(poly.ctx, poly.deg, tuple(reversed(poly.coeffs)), prec)

    @classmethod
    def from_rational(cls, num, den, prec):
        """Expand num/den exactly down to degree ``prec`` by long division."""
        ctx = num.ctx
        if den.is_zero():
            raise DivisionByZero("rational series with zero denominator")
        if num.is_zero():
            return cls(ctx, prec - 1, (), prec)
        top = num.deg - den.deg
        n = top - prec + 1
        if n <= 0:
            return cls(ctx, prec - 1, (), prec)
        d = den.coeffs[::-1]
        rem = list(num.coeffs[::-1]) + [0] * max(0, n + len(d))
        inv_lead = ctx.inv(d[0])
        out = []
        mul, sub = ctx.mul, ctx.sub
        for k in range(n):
            c = mul(rem[k], inv_lead)
            out.append(c)
            if c:
                for i in range(1, len(d)):
                    rem[k + i] = sub(rem[k + i], mul(c, d[i]))
        return cls(ctx, top, out, prec)

    @classmethod
    def monomial(cls, ctx, k, prec, c=1):
        return cls(ctx, k, (c,), prec)

    # -- inspection -----------------------------------------------------------

    def is_certified_nonzero(self):
        return bool(self.coeffs)

    @property
    def abs_exponent(self):
        """k with |f| = q^k; raises unless the leading term is certified."""
        if not self.coeffs:
            raise InsufficientPrecision(f"series is zero down to degree {self.prec}")
        return self.top_deg

    @property
    def valuation(self):
        return -self.abs_exponent

    def coeff(self, k):
        if k < self.prec:
            raise InsufficientPrecision(f"coefficient of Y^{k} is below precision {self.prec}")
        if k > self.top_deg:
            return 0
        return self.coeffs[self.top_deg - k]

    def _dense(self, top, prec):
        """Coefficients for degrees top..prec (must be within precision)."""
        return [self.coeff(k) if k <= self.top_deg else 0 for k in range(top, prec - 1, -1)]

    def truncate(self, prec):
        if prec < self.prec:
            raise InsufficientPrecision(f"cannot refine precision {self.prec} to {prec}")
        return LaurentSeries(self.ctx, self.top_deg, self.coeffs, prec)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, Poly):
            # exact: deep enough that neither a sum nor a product is limited by it
            extra = 0 if other.is_zero() else abs(other.deg)
            return LaurentSeries.from_poly(other, self.prec - abs(self.top_deg) - extra - 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = max(self.prec, other.prec)
        top = max(self.top_deg, other.top_deg)
        if top < prec:
            return LaurentSeries(self.ctx, prec - 1, (), prec)
        a = self._dense(top, prec)
        b = other._dense(top, prec)
        add = self.ctx.add
        return LaurentSeries(self.ctx, top, [add(x, y) for x, y in zip(a, b)], prec)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return LaurentSeries(self.ctx, self.top_deg, [neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        mul = self.ctx.mul
        if c == 0:
            return LaurentSeries(self.ctx, self.prec - 1, (), self.prec)
        return LaurentSeries(self.ctx, self.top_deg, [mul(c, x) for x in self.coeffs], self.prec)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # unknown tails are O(Y^(prec-1)); the product is trusted where both
        # cross terms are
        prec = max(self.top_deg + other.prec, other.top_deg + self.prec)
        top = self.top_deg + other.top_deg
        if not self.coeffs or not other.coeffs or top < prec:
            return LaurentSeries(self.ctx, prec - 1, (), prec)
        n = top - prec + 1
        return LaurentSeries(self.ctx, top, _conv(self.ctx, list(self.coeffs), list(other.coeffs), n), prec)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise InsufficientPrecision("cannot invert a series not certified nonzero")
        n = len(self.coeffs)
        top = -self.top_deg
        return LaurentSeries(self.ctx, top, _inv_terms(self.ctx, list(self.coeffs), n), top - n + 1)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def polynomial_part(self):
        """Sum of the terms of degree >= 0."""
        if self.prec > 0:
            raise InsufficientPrecision(f"constant term not trusted (precision {self.prec})")
        if self.top_deg < 0:
            return Poly.zero(self.ctx)
        return Poly(self.ctx, [self.coeff(k) for k in range(0, self.top_deg + 1)])

    # -- comparison / display ----------------------------------------------------

    def agrees_with(self, other):
        """True if the two series coincide on every coefficient both trust."""
        return not (self - other).is_certified_nonzero()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.ctx, self.top_deg, self.coeffs, self.prec) == (
            other.ctx,
            other.top_deg,
            other.coeffs,
            other.prec,
        )

    def __hash__(self):
        return hash((self.top_deg, self.coeffs, self.prec))

    def format(self, down_to=None):
        """``c_k*Y^k + ...`` down to degree ``down_to`` (default: precision)."""
        low = self.prec if down_to is None else max(down_to, self.prec)
        terms = []
        for k in range(self.top_deg, low - 1, -1):
            c = self.coeff(k)
            if not c:
                continue
            mono = "1" if k == 0 else ("Y" if k == 1 else f"Y^{k}")
            if c == 1:
                terms.append(mono)
            else:
                terms.append(str(c) if k == 0 else f"{c}*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(Y^{low - 1})"

    def __repr__(self):
        return f"LaurentSeries({self.format()})"


def series_arith(op, f, g=None):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "inv":
        return f.inverse()
    raise ValueError(f"unknown series operation {op!r}")


def series_from_cf(w, prec):
    """Value of a CF word with every coefficient of degree >= prec exact.

    Uses a convergent p_n/q_n deep enough that the tail error
    |w - p_n/q_n| = q^(-2 deg q_n - deg a_{n+1}) lies below degree ``prec``.
    """
    ctx = w.ctx
    one, zero = Poly.constant(ctx, 1), Poly.zero(ctx)
    p_prev, q_prev = one, zero
    p_cur, q_cur = w.a0, one
    i = 1
    while True:
        nxt = w.letter(i)
        if nxt is None:
            break
        if -2 * q_cur.deg - nxt.deg < prec:
            break
        p_prev, p_cur = p_cur, nxt * p_cur + p_prev
        q_prev, q_cur = q_cur, nxt * q_cur + q_prev
        i += 1
    return LaurentSeries.from_rational(p_cur, q_cur, prec)


def cf_from_series(f, max_terms, strict=False):
    """Partial quotients a_0, a_1, ... certified by the precision of f.

    Stops early when a complete quotient can no longer be certified (or the
    expansion terminates within precision).  With ``strict=True`` an early
    stop raises InsufficientPrecision carrying the certified count.
    """
    out = []
    x = f
    while len(out) < max_terms:
        try:
            a = x.polynomial_part()
        except InsufficientPrecision:
            break
        out.append(a)
        rest = x - LaurentSeries.from_poly(a, x.prec)
        if not rest.is_certified_nonzero():
            break
        x = rest.inverse()
    if strict and len(out) < max_terms:
        raise InsufficientPrecision(
            f"only {len(out)} of {max_terms} partial quotients certified", certified=len(out)
        )
    return out


def deepen(compute, start_prec, cap=DEFAULT_PRECISION_CAP):
    """Evaluate ``compute(prec)`` with prec = start, 2*start, ... until it
    returns a certified-nonzero series; raises PrecisionExhausted past cap.

    ``start_prec`` is a positive coefficient count; ``compute`` receives the
    corresponding (negative) degree.
    """
    n = max(start_prec, 1)
    while True:
        try:
            s = compute(-n)
            if s.is_certified_nonzero():
                return s
        except InsufficientPrecision:
            pass
        if n >= cap:
            raise PrecisionExhausted(f"no certified result with {cap} coefficients")
        n = min(2 * n, cap)
