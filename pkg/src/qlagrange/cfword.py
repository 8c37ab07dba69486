"""Eventually periodic continued-fraction words over F_q[Y].

A :class:`CFWord` ``[a0; a1, ..., ar | b1, ..., bs]`` denotes
a0 + 1/(a1 + 1/(... + 1/(ar + 1/(b1 + ... )))) with the block b1..bs
repeated forever.  An empty period is a finite CF, i.e. a rational function.

Everything here works on the letters themselves; the numeric cross-checks
live in :mod:`qlagrange.laurent` and :mod:`qlagrange.oracle`.
"""

from dataclasses import dataclass

from .algebra import NEG_INF, Poly, diff_degree, poly_gcd
from .algebra import _parse_poly_from, _Scanner  # noqa: F401  (shared grammar)
from .algebra import format_poly
from .errors import ConstantPartialQuotient, NotPurelyPeriodic, NotQuadratic, ParseError


@dataclass(frozen=True)
class CFWord:
    ctx: object
    a0: Poly
    preperiod: tuple = ()
    period: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))

    @classmethod
    def periodic(cls, period, a0=None, preperiod=()):
        """Shorthand for ``[a0; preperiod | period]`` (a0 defaults to 0)."""
        period = tuple(period)
        ctx = (period or preperiod)[0].ctx if a0 is None else a0.ctx
        if a0 is None:
            a0 = Poly.zero(ctx)
        return cls(ctx, a0, tuple(preperiod), period)

    @property
    def r(self):
        return len(self.preperiod)

    @property
    def s(self):
        return len(self.period)

    def is_quadratic(self):
        return bool(self.period)

    def letter(self, i):
        """a_i (a_0 is the polynomial part); None past the end of a finite CF."""
        if i == 0:
            return self.a0
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        if not self.period:
            return None
        return self.period[(i - len(self.preperiod) - 1) % len(self.period)]

    def letters(self, start, count):
        return [self.letter(i) for i in range(start, start + count)]

    def __str__(self):
        return format_cfword(self)


@dataclass(frozen=True)
class TwistSpec:
    """Selects tau_{j,a} (or its mirrored counterpart tau'_{j,a})."""

    j: int
    a: int
    mirrored: bool = False


@dataclass(frozen=True)
class Convergents:
    """p_k/q_k for k = 0..n; ``p[k]`` is p_k.  Seeds p_{-1} = 1, q_{-1} = 0."""

    p: tuple
    q: tuple

    def pair(self, k):
        if k == -1:
            ctx = self.p[0].ctx
            return Poly.constant(ctx, 1), Poly.zero(ctx)
        return self.p[k], self.q[k]

    def determinant(self, k):
        """p_k q_{k-1} - p_{k-1} q_k; a unit of F_q for every k >= 0."""
        pk, qk = self.pair(k)
        pm, qm = self.pair(k - 1)
        return pk * qm - pm * qk


# -- literal grammar ----------------------------------------------------------


def parse_cfword(text, ctx):
    """Parse ``[a0; p1, p2 | b1, b2]``; ``|`` starts the period."""
    sc = _Scanner(text)
    sc.expect("[")
    a0 = _parse_poly_from(sc, ctx, stop=";]")
    pre, per = [], []
    seen_bar = False
    if sc.take(";"):
        target = pre
        if sc.peek() not in ("|", "]"):
            target.append(_parse_poly_from(sc, ctx, stop=",|]"))
            while sc.take(","):
                target.append(_parse_poly_from(sc, ctx, stop=",|]"))
        if sc.take("|"):
            seen_bar = True
            per.append(_parse_poly_from(sc, ctx, stop=",]"))
            while sc.take(","):
                per.append(_parse_poly_from(sc, ctx, stop=",]"))
    sc.expect("]")
    if sc.peek():
        sc.error("trailing characters")
    if seen_bar and not per:
        raise ParseError("empty period", text, sc.pos)
    return CFWord(ctx, a0, tuple(pre), tuple(per))


def format_cfword(w):
    head = format_poly(w.a0)
    pre = ",".join(format_poly(x) for x in w.preperiod)
    if not w.period:
        return f"[{head};{pre}]" if pre else f"[{head}]"
    per = ",".join(format_poly(x) for x in w.period)
    return f"[{head};{pre}|{per}]"


# -- word utilities -----------------------------------------------------------


def primitive_root(seq):
    """Shortest block whose repetition gives ``seq`` (failure-function test)."""
    n = len(seq)
    if n == 0:
        return tuple(seq)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k - 1]
        if seq[i] == seq[k]:
            k += 1
        fail[i] = k
    p = n - fail[-1]
    return tuple(seq[:p]) if n % p == 0 else tuple(seq)


def _twisted(ctx, seq, a, first_exp):
    """Multiply seq[i] by a^(first_exp * (-1)^i)."""
    if a == 1:
        return tuple(seq)
    ainv = ctx.inv(a)
    units = (a, ainv) if first_exp == 1 else (ainv, a)
    return tuple(x.scale(units[i % 2]) for i, x in enumerate(seq))


def _cyclic_twist(ctx, block, a, first_exp):
    """Twist of the infinite word block^inf, returned as one full period."""
    n = len(block)
    if n % 2 and ctx.mul(a, a) != 1:
        block = tuple(block) * 2
    return _twisted(ctx, block, a, first_exp)


def canonicalize(w):
    """Primitive period, and last preperiod letter != last period letter."""
    for x in w.preperiod + w.period:
        if x.deg < 1:
            raise ConstantPartialQuotient(f"partial quotient {format_poly(x)} is constant")
    pre = list(w.preperiod)
    per = primitive_root(w.period)
    while pre and per and pre[-1] == per[-1]:
        pre.pop()
        per = (per[-1],) + per[:-1]
    return CFWord(w.ctx, w.a0, tuple(pre), per)


def twist(w, a, start_parity="even"):
    """Word of a*w (parity "even": a on even indices, a^-1 on odd ones).

    ``start_parity="odd"`` swaps the roles, giving the word of a^-1 * w.
    """
    ctx = w.ctx
    if a == 0:
        raise ValueError("twist by 0")
    first = 1 if start_parity == "even" else -1
    head = _twisted(ctx, (w.a0,) + w.preperiod, a, first)
    per = ()
    if w.period:
        # exponent sign at index r+1 where the period starts
        sign = first * (1 if (w.r + 1) % 2 == 0 else -1)
        per = _cyclic_twist(ctx, w.period, a, sign)
    return canonicalize(CFWord(ctx, head[0], head[1:], per))


def negate(w):
    neg = lambda x: -x  # noqa: E731
    return CFWord(w.ctx, -w.a0, tuple(map(neg, w.preperiod)), tuple(map(neg, w.period)))


def select_tau(base_period, spec):
    """The purely periodic word [0; overline(B)] whose block B is the tail of
    tau_{j,a} (rotation starting at b_j, first letter scaled by a) or, when
    mirrored, of tau'_{j,a} (reversed, starting at b_{j-1} scaled by a^-1)."""
    period = tuple(base_period)
    s = len(period)
    if not s:
        raise NotQuadratic("empty period")
    if not 1 <= spec.j <= s:
        raise ValueError(f"rotation index {spec.j} outside 1..{s}")
    ctx = period[0].ctx
    if spec.mirrored:
        block = tuple(period[(spec.j - 2 - i) % s] for i in range(s))
        tail = _cyclic_twist(ctx, block, spec.a, -1)
    else:
        block = tuple(period[(spec.j - 1 + i) % s] for i in range(s))
        tail = _cyclic_twist(ctx, block, spec.a, 1)
    return CFWord(ctx, Poly.zero(ctx), (), primitive_root(tail))


def tail_variants(period):
    """Every tail block of an orbit element: all rotations of the period and
    of its reversal, twisted by every unit; primitive, deduplicated, in a
    deterministic order."""
    period = tuple(period)
    ctx = period[0].ctx
    seen = {}
    s = len(period)
    for mirrored in (False, True):
        for j in range(1, s + 1):
            for a in ctx.units():
                blk = select_tau(period, TwistSpec(j, a, mirrored)).period
                seen.setdefault(blk, None)
    return list(seen)


# -- convergents and algebraic data -------------------------------------------


def convergents(w, n):
    ctx = w.ctx
    one, zero = Poly.constant(ctx, 1), Poly.zero(ctx)
    ps, qs = [w.a0], [one]
    p_prev, q_prev = one, zero
    for k in range(1, n + 1):
        a = w.letter(k)
        if a is None:
            raise ValueError(f"word has fewer than {n} partial quotients")
        p_new = a * ps[-1] + p_prev
        q_new = a * qs[-1] + q_prev
        p_prev, q_prev = ps[-1], qs[-1]
        ps.append(p_new)
        qs.append(q_new)
    return Convergents(tuple(ps), tuple(qs))


def _require_quadratic(w):
    if not w.period:
        raise NotQuadratic(f"{format_cfword(w)} is a rational function")


def galois_conjugate_period(w):
    """Conjugate of tau = [b1; overline(b2..bs, b1)]: -[0; overline(bs..b1)]."""
    _require_quadratic(w)
    if w.preperiod or w.a0 != w.period[-1]:
        raise NotPurelyPeriodic(f"{format_cfword(w)} is not of the form [b1; b2..bs, b1]")
    b = (w.period[-1],) + w.period[:-1]  # b1..bs
    rev = tuple(reversed(b))
    return canonicalize(negate(CFWord(w.ctx, Poly.zero(w.ctx), (), rev)))


def _two(poly):
    return poly + poly


def minimal_polynomial(w):
    """(A, B, C) with A x^2 + B x + C = 0 at x = w; coprime, A monic."""
    _require_quadratic(w)
    w = canonicalize(w)
    ctx = w.ctx
    s, r = w.s, w.r
    # tau = [b1; b2..bs, b1, ...] is a root of p_s x^2 + (p_{s-1} - q_s) x - q_{s-1}
    core = convergents(CFWord(ctx, Poly.zero(ctx), (), w.period), s)
    ps, qs = core.pair(s)
    ps1, qs1 = core.pair(s - 1)
    A1, B1, C1 = ps, ps1 - qs, -qs1
    # w = M(tau) with M from the convergents of [a0; a1..ar]; pull back by M^-1
    head = convergents(CFWord(ctx, w.a0, w.preperiod, ()), r)
    pr, qr = head.pair(r)
    pr1, qr1 = head.pair(r - 1)
    a, b, c, d = qr1, -pr1, -qr, pr
    A = A1 * a * a + B1 * a * c + C1 * c * c
    B = _two(A1 * a * b) + B1 * (a * d + b * c) + _two(C1 * c * d)
    C = A1 * b * b + B1 * b * d + C1 * d * d
    g = poly_gcd(poly_gcd(A, B), C)
    A, B, C = (x // g for x in (A, B, C))
    lead = ctx.inv(A.leading)
    return A.scale(lead), B.scale(lead), C.scale(lead)


def height(w):
    """e with h(w) = 1/|w - w^sigma| = q^e."""
    _require_quadratic(w)
    w = canonicalize(w)
    b_last = w.period[-1]
    if not w.preperiod:
        # w - a0 = 1/tau with tau = [b1; b2..bs, b1, ..], so
        # |w - w^sigma| = |tau - tau^sigma| / (|tau| |tau^sigma|) = q^{deg b1} / q^{deg b1 - deg bs}
        return -b_last.deg
    ar = w.preperiod[-1]
    total = sum(x.deg for x in w.preperiod)
    return 2 * total - ar.deg - b_last.deg + diff_degree(ar, b_last)


def distance(f, g):
    """e with |f - g| = q^-e, or None when f and g are the same series."""
    f, g = canonicalize(f), canonicalize(g)
    if f == g:
        return None
    if f.a0 != g.a0:
        return -diff_degree(f.a0, g.a0)
    total = 0
    i = 1
    while True:
        x, y = f.letter(i), g.letter(i)
        if x is None:
            return 2 * total + y.deg
        if y is None:
            return 2 * total + x.deg
        if x != y:
            return 2 * total + x.deg + y.deg - diff_degree(x, y)
        total += x.deg
        i += 1


def equivalent(f, g):
    """True iff f lies in the PGL_2(F_q[Y]) orbit of g or of its conjugate."""
    _require_quadratic(f)
    _require_quadratic(g)
    pf = primitive_root(canonicalize(f).period)
    return pf in set(tail_variants(canonicalize(g).period))


def cf_stats(w):
    """(M, M2, m): max degree, max adjacent degree sum, min degree of the tail."""
    _require_quadratic(w)
    degs = [x.deg for x in canonicalize(w).period]
    n = len(degs)
    m2 = max(degs[i] + degs[(i + 1) % n] for i in range(n))
    return max(degs), m2, min(degs)


__all__ = [
    "CFWord",
    "Convergents",
    "NEG_INF",
    "TwistSpec",
    "canonicalize",
    "cf_stats",
    "convergents",
    "distance",
    "equivalent",
    "format_cfword",
    "galois_conjugate_period",
    "height",
    "minimal_polynomial",
    "negate",
    "parse_cfword",
    "primitive_root",
    "select_tau",
    "tail_variants",
    "twist",
]
