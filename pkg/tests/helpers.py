"""Shared builders and hypothesis strategies for the test suite."""

import random

from hypothesis import strategies as st

from qlagrange.algebra import Poly, enumerate_polys, field_of_order, parse_poly
from qlagrange.cfword import CFWord, parse_cfword


def K(q):
    return field_of_order(q)


def P(text, q=2):
    return parse_poly(text, K(q))


def W(text, q=2):
    return parse_cfword(text, K(q))


def periodic(q, *letters):
    return CFWord.periodic([P(x, q) for x in letters])


def random_poly(rng, ctx, lo=1, hi=3):
    d = rng.randint(lo, hi)
    coeffs = [rng.randrange(ctx.q) for _ in range(d)] + [rng.randrange(1, ctx.q)]
    return Poly(ctx, tuple(coeffs))


def random_period(rng, ctx, max_len=4, lo=1, hi=3):
    return [random_poly(rng, ctx, lo, hi) for _ in range(rng.randint(1, max_len))]


def random_word(rng, ctx, max_pre=2, max_len=4, hi=3):
    a0 = Poly(ctx, tuple(rng.randrange(ctx.q) for _ in range(rng.randint(0, 2))))
    pre = [random_poly(rng, ctx, 1, hi) for _ in range(rng.randint(0, max_pre))]
    return CFWord(ctx, a0, tuple(pre), tuple(random_period(rng, ctx, max_len, 1, hi)))


def all_polys(q, hi):
    return list(enumerate_polys(K(q), 1, hi))


# -- hypothesis -------------------------------------------------------------

fields = st.sampled_from([2, 3, 4, 5]).map(K)


@st.composite
def polys(draw, ctx, lo=1, hi=3):
    d = draw(st.integers(lo, hi))
    low = draw(st.lists(st.integers(0, ctx.q - 1), min_size=d, max_size=d))
    lead = draw(st.integers(1, ctx.q - 1))
    return Poly(ctx, tuple(low) + (lead,))


@st.composite
def any_polys(draw, ctx, hi=3):
    """Possibly zero or constant polynomials."""
    coeffs = draw(st.lists(st.integers(0, ctx.q - 1), max_size=hi + 1))
    return Poly(ctx, tuple(coeffs))


@st.composite
def periods(draw, ctx, max_len=4, hi=3):
    n = draw(st.integers(1, max_len))
    return [draw(polys(ctx, 1, hi)) for _ in range(n)]


@st.composite
def words(draw, ctx=None, max_pre=2, max_len=4, hi=3):
    ctx = draw(fields) if ctx is None else ctx
    a0 = draw(any_polys(ctx, 2))
    pre = draw(st.lists(polys(ctx, 1, hi), max_size=max_pre))
    per = draw(periods(ctx, max_len, hi))
    return CFWord(ctx, a0, tuple(pre), tuple(per))


@st.composite
def finite_words(draw, ctx, max_len=6, hi=3):
    a0 = draw(any_polys(ctx, 2))
    letters = draw(st.lists(polys(ctx, 1, hi), max_size=max_len))
    return CFWord(ctx, a0, tuple(letters), ())


def seeded(seed):
    return random.Random(seed)
