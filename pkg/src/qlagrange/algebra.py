"""Exact arithmetic in F_q and in F_q[Y].

Field elements are plain ints in ``range(q)``: the base-p digits of the code
are the coordinates of the element in the polynomial basis 1, g, g^2, ...
of F_q over F_p, where g is a root of the field modulus.  Polynomials over
F_q are immutable :class:`Poly` objects holding a tuple of such codes,
lowest degree first.
"""

from functools import lru_cache, total_ordering
from itertools import product

from .errors import (
    CoefficientOutOfRange,
    DivisionByZero,
    InvalidField,
    InversionOfZero,
    ParseError,
)

MAX_FIELD_ORDER = 1024


@total_ordering
class _NegInf:
    """Degree of the zero polynomial: below every int, absorbing under +/-."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("qlagrange.NEG_INF")

    def __add__(self, other):
        return self

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __repr__(self):
        return "NEG_INF"

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q):
    """Split q = p^e; raises InvalidField if q is not a prime power."""
    if q < 2:
        raise InvalidField(f"field order must be a prime power, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not is_prime(p):
        raise InvalidField(f"field order must be a prime power, got {q}")
    e, n = 0, q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise InvalidField(f"field order must be a prime power, got {q}")
    return p, e


# -- dense polynomials over F_p (lists of ints, lowest degree first) --------


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(_fp_trim(a)) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
    return a


def _is_irreducible_fp(m, p):
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _fp_mod(m, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p, e):
    """Smallest (by code) monic irreducible polynomial of degree e over F_p."""
    if e == 1:
        return (0, 1)
    for tail in product(range(p), repeat=e):
        m = list(reversed(tail)) + [1]
        if m[0] != 0 and _is_irreducible_fp(m, p):
            return tuple(m)
    raise InvalidField(f"no irreducible polynomial of degree {e} over F_{p}")


class FieldCtx:
    """The finite field F_q, q = p^e <= 1024, with table-driven arithmetic."""

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise InvalidField(f"characteristic must be prime, got {p}")
        if e < 1:
            raise InvalidField(f"extension degree must be >= 1, got {e}")
        q = p**e
        if q > MAX_FIELD_ORDER:
            raise InvalidField(f"field order {q} exceeds {MAX_FIELD_ORDER}")
        self.p, self.e, self.q = p, e, q
        if e == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = default_modulus(p, e)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise InvalidField(f"modulus must be monic of degree {e}")
            if not _is_irreducible_fp(list(modulus), p):
                raise InvalidField(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._build_tables()

    def _digits(self, x):
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def _from_digits(self, ds):
        x = 0
        for d in reversed(ds):
            x = x * self.p + d
        return x

    def _slow_mul(self, x, y):
        p = self.p
        a, b = self._digits(x), self._digits(y)
        prod = [0] * (2 * self.e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        r = _fp_mod(prod, list(self.modulus), p) if self.e > 1 else prod
        r = list(r) + [0] * (self.e - len(r))
        return self._from_digits(r[: self.e])

    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        factors = [r for r in range(2, order + 1) if order % r == 0 and is_prime(r)]
        gen = None
        for g in (range(2, q) if q > 2 else [1]):
            ok = True
            for r in factors:
                x, k = 1, order // r
                for _ in range(k):
                    x = self._slow_mul(x, g)
                if x == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        self.generator = gen
        self._exp = [0] * (2 * order)
        self._log = [None] * q
        x = 1
        for i in range(order):
            self._exp[i] = x
            self._exp[i + order] = x
            self._log[x] = i
            x = self._slow_mul(x, gen)
        self._inv = [None] + [self._exp[(order - self._log[x]) % order] for x in range(1, q)]
        if p == 2 or self.e == 1:
            self._neg = [(-x) % p if self.e == 1 else x for x in range(q)]
            self._add_table = None
        else:
            self._neg = [self._from_digits([(-d) % p for d in self._digits(x)]) for x in range(q)]
            self._add_table = None  # built on first use

    # -- element arithmetic --------------------------------------------------

    def add(self, x, y):
        if self.p == 2:
            return x ^ y
        if self.e == 1:
            return (x + y) % self.p
        t = self._add_table
        if t is None:
            digits = [self._digits(v) for v in range(self.q)]
            t = self._add_table = [
                [self._from_digits([(a + b) % self.p for a, b in zip(da, db)]) for db in digits]
                for da in digits
            ]
        return t[x][y]

    def neg(self, x):
        return self._neg[x]

    def sub(self, x, y):
        return self.add(x, self._neg[y])

    def mul(self, x, y):
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x):
        if x == 0:
            raise InversionOfZero("0 has no inverse in F_%d" % self.q)
        return self._inv[x]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def units(self):
        return range(1, self.q)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FieldCtx(q={self.q})"
        return f"FieldCtx(q={self.q}, modulus={self.modulus})"

    def __reduce__(self):
        return (field, (self.p, self.e, self.modulus))


@lru_cache(maxsize=None)
def _field_cached(p, e, modulus):
    return FieldCtx(p, e, modulus)


def field(p, e=1, modulus=None):
    """Shared FieldCtx for (p, e, modulus); contexts are immutable.

    An explicit modulus equal to the default one yields the same object.
    """
    if e == 1:
        modulus = None
    elif modulus is not None:
        modulus = tuple(int(c) % p for c in modulus) if p > 0 else tuple(modulus)
    elif is_prime(p) and e > 1 and p**e <= MAX_FIELD_ORDER:
        modulus = default_modulus(p, e)
    return _field_cached(p, e, modulus)


def field_of_order(q, modulus=None):
    p, e = prime_power(q)
    return field(p, e, modulus)


def field_arith(ctx, op, x, y=None):
    """Dispatch one of add/sub/mul/inv/neg on field codes."""
    for v in (x, y):
        if v is not None and not 0 <= v < ctx.q:
            raise CoefficientOutOfRange(f"{v} is not an element code of F_{ctx.q}")
    if op in ("inv", "neg"):
        return getattr(ctx, op)(x)
    if op in ("add", "sub", "mul"):
        if y is None:
            raise ValueError(f"{op} needs two operands")
        return getattr(ctx, op)(x, y)
    raise ValueError(f"unknown field operation {op!r}")


# -- polynomials over F_q ---------------------------------------------------


class Poly:
    """Immutable element of F_q[Y]; ``coeffs[i]`` is the coefficient of Y^i."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx, coeffs=()):
        coeffs = list(coeffs)
        for c in coeffs:
            if not 0 <= c < ctx.q:
                raise CoefficientOutOfRange(f"coefficient {c} out of range for F_{ctx.q}")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.ctx = ctx
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, ctx, coeffs):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, ())

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, (c,))

    @classmethod
    def monomial(cls, ctx, k, c=1):
        return cls(ctx, (0,) * k + (c,))

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def _check(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        while out and out[-1] == 0:
            out.pop()
        return Poly._raw(self.ctx, tuple(out))

    def __neg__(self):
        neg = self.ctx.neg
        return Poly._raw(self.ctx, tuple(neg(c) for c in self.coeffs))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if c == 0:
            return Poly.zero(self.ctx)
        mul = self.ctx.mul
        return Poly._raw(self.ctx, tuple(mul(c, x) for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.ctx)
        ctx = self.ctx
        out = [0] * (len(a) + len(b) - 1)
        if ctx.e == 1:
            p = ctx.p
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            out = [c % p for c in out]
        else:
            add, mul = ctx.add, ctx.mul
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly._raw(ctx, tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.ctx is other.ctx or self.ctx == other.ctx)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.ctx.q, self.coeffs))
        return h

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, q={self.ctx.q})"

    def __str__(self):
        return format_poly(self)

    def __reduce__(self):
        return (Poly, (self.ctx, self.coeffs))


def diff_degree(a, b):
    """deg(a - b) without building the difference."""
    ca, cb = a.coeffs, b.coeffs
    if len(ca) != len(cb):
        return max(len(ca), len(cb)) - 1
    for i in range(len(ca) - 1, -1, -1):
        if ca[i] != cb[i]:
            return i
    return NEG_INF


def poly_divmod(a, b):
    """Euclidean division a = quot*b + rem with deg rem < deg b."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    ctx = a.ctx
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    if len(rem) - 1 < db:
        return Poly.zero(ctx), a
    inv_lead = ctx.inv(b.coeffs[-1])
    quot = [0] * (len(rem) - db)
    mul, sub = ctx.mul, ctx.sub
    for k in range(len(rem) - 1 - db, -1, -1):
        c = mul(rem[k + db], inv_lead)
        quot[k] = c
        if c:
            for i, bc in enumerate(b.coeffs):
                rem[k + i] = sub(rem[k + i], mul(c, bc))
    return Poly(ctx, quot), Poly(ctx, rem[:db])


def poly_gcd(a, b):
    """Monic gcd by the Euclidean divmod chain (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def enumerate_polys(ctx, min_deg, max_deg):
    """All nonconstant polynomials with min_deg <= deg <= max_deg.

    Ordered by degree, then lexicographically by coefficient codes read from
    the leading coefficient down.
    """
    if min_deg < 1 or max_deg < min_deg:
        raise ValueError("need 1 <= min_deg <= max_deg")
    q = ctx.q
    for d in range(min_deg, max_deg + 1):
        for high_first in product(range(1, q), *([range(q)] * d)):
            yield Poly._raw(ctx, tuple(reversed(high_first)))


# -- text form --------------------------------------------------------------


def format_poly(poly):
    if poly.is_zero():
        return "0"
    terms = []
    for k in range(len(poly.coeffs) - 1, -1, -1):
        c = poly.coeffs[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = "Y" if k == 1 else f"Y^{k}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.text, self.pos)

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise ParseError(f"expected integer, found {found!r}", self.text, self.pos)
        return int(self.text[start : self.pos])

    def error(self, message):
        raise ParseError(message, self.text, self.pos)


def _parse_poly_from(sc, ctx, stop=""):
    coeffs = {}

    def term():
        c, k = 1, 0
        ch = sc.peek()
        if ch.isdigit():
            at = sc.pos
            c = sc.integer()
            if c >= ctx.q:
                raise CoefficientOutOfRange(
                    f"coefficient {c} at position {at} is not a code of F_{ctx.q}"
                )
            if not sc.take("*"):
                return c, 0
            ch = sc.peek()
        if ch in ("Y", "y"):
            sc.pos += 1
            k = 1
            if sc.take("^"):
                k = sc.integer()
        else:
            sc.error(f"expected coefficient or 'Y', found {ch or 'end of input'!r}")
        return c, k

    while True:
        c, k = term()
        coeffs[k] = ctx.add(coeffs.get(k, 0), c)
        if not sc.take("+"):
            break
    nxt = sc.peek()
    if nxt and nxt not in stop:
        sc.error(f"unexpected {nxt!r}")
    size = max(coeffs) + 1
    return Poly(ctx, [coeffs.get(i, 0) for i in range(size)])


def parse_poly(text, ctx):
    """Parse e.g. ``"Y^2+2*Y+1"``; coefficients are element codes 0..q-1."""
    sc = _Scanner(text)
    return _parse_poly_from(sc, ctx)
