import pytest

from helpers import K, periodic
from qlagrange.cfword import CFWord, canonicalize, height, tail_variants
from qlagrange.errors import EmptyWindow, InTheta
from qlagrange.laurent import cf_from_series, series_from_cf
from qlagrange.oracle import _element, _matrices, _Roots, brute_force_check, enumerate_orbit


def test_identity_gives_alpha():
    alpha = periodic(2, "Y", "Y^2")
    orbit = enumerate_orbit(alpha, 0)
    ident = [e for e in orbit if [str(x) for x in e.matrix] == ["1", "0", "0", "1"] and e.conjugate_choice == "alpha"]
    assert len(ident) == 1
    assert ident[0].beta.agrees_with(series_from_cf(alpha, -40))


@pytest.mark.parametrize("q,count", [(2, 6), (3, 24), (4, 60)])
def test_constant_matrices_give_pgl2(q, count):
    assert len(list(_matrices(K(q), 0))) == count


@pytest.mark.parametrize("q,bound", [(2, 2), (3, 1)])
def test_enumerated_matrices_invertible_and_distinct(q, bound):
    seen = set()
    for A, B, C, D in _matrices(K(q), bound):
        det = A * D - B * C
        assert det.deg == 0
        assert max(x.deg for x in (A, B, C, D)) <= bound
        first = next(x for x in (A, B, C, D) if not x.is_zero())
        assert first.leading == 1
        seen.add((A, B, C, D))
    assert len(seen) == len(list(_matrices(K(q), bound)))


def test_orbit_elements_have_distinct_roots():
    for e in enumerate_orbit(periodic(3, "Y"), 1):
        assert e.height_exponent is not None


def word_of(series, alpha):
    """Recover [a0; a1..ar | tail] for an orbit element from its expansion."""
    letters = cf_from_series(series, 40)
    variants = set(tail_variants(canonicalize(alpha).period))
    for r in range(0, 12):
        rest = tuple(letters[r + 1 :])
        for v in variants:
            n = len(v)
            if len(rest) >= 3 * n and all(rest[i] == v[i % n] for i in range(len(rest))):
                return canonicalize(CFWord(alpha.ctx, letters[0], tuple(letters[1 : r + 1]), v))
    return None


@pytest.mark.parametrize("q,letters", [(2, ("Y", "Y^2")), (3, ("Y",)), (3, ("Y^2", "Y+1"))])
def test_series_height_matches_word_height(q, letters):
    alpha = periodic(q, *letters)
    roots = _Roots(canonicalize(alpha))
    checked = 0
    for e in enumerate_orbit(alpha, 1)[::7]:
        deep = _element(roots, e.matrix, e.conjugate_choice, -300)
        w = word_of(deep.beta, alpha)
        if w is None:
            continue
        assert e.height_exponent == height(w)
        checked += 1
    assert checked >= 5


def test_brute_force_example():
    alpha = periodic(2, "Y")
    v = brute_force_check(alpha, periodic(2, "Y^2", "Y^2"), 3, (2, 8))
    assert v.passed and v.max_exponent == v.fast_exponent == 2
    assert [str(x) for x in v.witness[0]] == ["0", "1", "1", "Y^2"]
    assert v.to_dict()["verdict"] == "PASS"


def test_brute_force_parallel_agrees():
    alpha, f = periodic(2, "Y"), periodic(2, "Y^2", "Y+1")
    a = brute_force_check(alpha, f, 2, (1, 6))
    b = brute_force_check(alpha, f, 2, (1, 6), workers=3)
    assert (a.passed, a.max_exponent, a.checked) == (b.passed, b.max_exponent, b.checked)


def test_empty_window():
    with pytest.raises(EmptyWindow):
        brute_force_check(periodic(2, "Y"), periodic(2, "Y^2"), 1, (500, 600))


def test_orbit_member_rejected():
    with pytest.raises(InTheta):
        brute_force_check(periodic(2, "Y"), periodic(2, "Y"), 1, (0, 5))


def test_deg_bound_guard():
    with pytest.raises(ValueError):
        enumerate_orbit(periodic(2, "Y"), 5)


def test_low_window_shows_shallow_outliers():
    """Elements of negative height can beat the asymptotic constant; the
    verdict reports them as violations rather than hiding them."""
    v = brute_force_check(periodic(3, "Y", "Y^2"), periodic(3, "2*Y+1"), 1, (-4, 6))
    assert not v.passed and v.max_exponent > v.fast_exponent
    assert all(e > v.fast_exponent for _, _, e in v.violations)
