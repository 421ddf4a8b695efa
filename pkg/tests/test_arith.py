import numpy as np
import pytest
from hypothesis import given, strategies as st

from skewpoly import SkewPoly, llcm_naive, rdiv_naive, rgcd_naive, skew_eval, skew_mul_naive
from skewpoly import arith
from skewpoly import evalinterp as ei
from skewpoly.linalg import rank

GRID = [(2, 1), (2, 4), (3, 3), (5, 2), (7, 5), (2, 8)]


def _free(ring, d, rng):
    while True:
        pts = ring.random(rng, (d,))
        if rank(pts.reshape(d, -1), ring.p) == d:
            return pts


def _values(a, pts):
    return np.stack([skew_eval(a, x) for x in pts])


@pytest.mark.parametrize("p,r", GRID)
@pytest.mark.parametrize("threshold", [1, 2, 5, 16])
def test_division_matches_naive(make_ring, rng, p, r, threshold):
    ring = make_ring(p, r)
    for da, db in [(40, 3), (40, 20), (33, 32), (17, 1), (64, 40)]:
        a, b = SkewPoly.random(ring, da, rng), SkewPoly.random(ring, db, rng)
        assert arith.rdiv_fast(a, b, threshold=threshold) == rdiv_naive(a, b)


def test_division_examples(make_ring, rng):
    ring = make_ring(3, 4)
    a, b = SkewPoly.random(ring, 3, rng), SkewPoly.random(ring, 8, rng)
    assert arith.rdiv_fast(a, b) == (SkewPoly.zero(ring), a)
    big = SkewPoly.random(ring, 30, rng)
    q, rem = arith.rdiv_fast(big, SkewPoly.monomial(ring, 7), threshold=2)
    assert q == big.shift(-7) and rem == big.truncate(7)
    with pytest.raises(ZeroDivisionError):
        arith.rdiv_fast(big, SkewPoly.zero(ring))


@pytest.mark.parametrize("p,r", GRID)
@pytest.mark.parametrize("threshold", [1, 3, 16])
def test_gcd_matches_naive(make_ring, rng, p, r, threshold):
    ring = make_ring(p, r)
    for da, db in [(30, 25), (12, 30), (20, 20), (40, 1)]:
        a, b, w = SkewPoly.random(ring, da, rng), SkewPoly.random(ring, db, rng), SkewPoly.random(ring, 6, rng)
        for x, y in [(a, b), (a * w, b * w)]:
            g, u, v = arith.rgcd_fast(x, y, threshold=threshold)
            assert (g, u, v) == rgcd_naive(x, y)
            assert skew_mul_naive(u, x) + skew_mul_naive(v, y) == g
        assert arith.llcm_fast(a, b, threshold=threshold) == llcm_naive(a, b)


def test_gcd_examples(make_ring, rng):
    ring = make_ring(5, 3)
    a, w = SkewPoly.random(ring, 9, rng), SkewPoly.random(ring, 7, rng)
    assert arith.rgcd_fast(w * a, a)[0] == a.monic()
    assert arith.llcm_fast(a, a) == a.monic()
    coprime = [arith.rgcd_fast(SkewPoly.random(ring, 20, rng), SkewPoly.random(ring, 19, rng))[0] for _ in range(5)]
    assert any(g == SkewPoly.one(ring) for g in coprime)


@pytest.mark.parametrize("p,r", [(2, 4), (3, 5), (7, 2)])
def test_bounded_remainder(make_ring, rng, p, r):
    ring = make_ring(p, r)
    a, b = SkewPoly.random(ring, 30, rng), SkewPoly.random(ring, 26, rng)
    for bound in (1, 10, 25, 29):
        rem, u, v = arith.rgcd_bounded(a, b, bound, threshold=2)
        assert rem.degree < bound
        assert u * a + v * b == rem
        # first such remainder of the naive sequence
        seq = [a, b]
        while not seq[-1].is_zero():
            seq.append(rdiv_naive(seq[-2], seq[-1])[1])
        assert rem == next(x for x in seq if x.degree < bound)


@pytest.mark.parametrize("p,r", GRID)
def test_eval_by_remainder(make_ring, rng, p, r):
    ring = make_ring(p, r)
    a = SkewPoly.random(ring, 15, rng)
    for _ in range(5):
        x = ring.random_unit(rng)
        assert np.array_equal(arith.eval_rem_linear(a, x), skew_eval(a, x))
    x, c = ring.random_unit(rng), ring.random(rng)
    assert np.array_equal(arith.eval_rem_linear(SkewPoly.monomial(ring, 1), x), ring.frob(x, 1))
    assert np.array_equal(arith.eval_rem_linear(SkewPoly.constant(ring, c), x), ring.mul(c, x))
    with pytest.raises(ValueError):
        arith.eval_rem_linear(a, ring.zeros())


@pytest.mark.parametrize("p,r", GRID)
def test_min_subspace(make_ring, rng, p, r):
    ring = make_ring(p, r)
    for d in range(1, r + 1):
        pts = _free(ring, d, rng)
        m = arith.min_subspace_poly(pts, ring, threshold=2)
        assert m.degree == d and np.array_equal(m.lc, ring.one())
        assert not _values(m, pts).any()
        combo = ring.add(pts[0], ring.mul(ring.from_base([1]), pts[-1]))
        assert not m(combo).any()
        assert arith.min_subspace_poly(ring.normal_basis[:d], ring) == ei.min_subspace_poly_truncated(d, ring)
    x = ring.random_unit(rng)
    assert arith.min_subspace_poly(x[None], ring) == arith.linear_factor(x, ring)


def test_dependent_family_named(make_ring, rng):
    ring = make_ring(3, 4)
    x, y = ring.random_unit(rng), ring.random_unit(rng)
    with pytest.raises(ValueError, match="points 0..2 are linearly dependent"):
        arith.min_subspace_poly(np.stack([x, y, ring.add(x, y)]), ring)
    with pytest.raises(ValueError, match="zero point"):
        arith.min_subspace_poly(np.stack([x, ring.zeros()]), ring)


@pytest.mark.parametrize("p,r", GRID)
@pytest.mark.parametrize("strategy", ["tree", "operator", "auto"])
def test_multieval(make_ring, rng, p, r, strategy):
    ring = make_ring(p, r)
    for d in sorted({1, max(1, r // 2), r}):
        pts = _free(ring, d, rng)
        for deg in (0, d, 3 * r + 2):
            a = SkewPoly.random(ring, deg, rng)
            assert np.array_equal(arith.multieval(a, pts, strategy), _values(a, pts))
        assert np.array_equal(arith.multieval(SkewPoly.one(ring), pts, strategy), pts)
        nb = ring.normal_basis[:d]
        a = SkewPoly.random(ring, d, rng)
        assert np.array_equal(arith.multieval(a, nb, strategy), ei.eval_truncated(a, d))
    with pytest.raises(ValueError):
        arith.multieval(SkewPoly.one(ring), ring.zeros((1,)), strategy)


@pytest.mark.parametrize("p,r", GRID)
def test_interpolation(make_ring, rng, p, r):
    ring = make_ring(p, r)
    for d in range(1, r + 1):
        pts = _free(ring, d, rng)
        planted = SkewPoly.random(ring, d - 1, rng)
        vals = _values(planted, pts)
        assert arith.interpolate_general(pts, vals, ring) == planted
        oracle = ei.interpolate_linear_oracle(list(zip(pts, vals)), d - 1, ring)
        assert oracle == planted
    x, y = ring.random_unit(rng), ring.random(rng)
    assert arith.interpolate_general(x[None], y[None], ring) == SkewPoly.constant(ring, ring.div(y, x))


def test_interpolator_reuse(make_ring, rng):
    ring = make_ring(2, 8)
    pts = _free(ring, 8, rng)
    interp = arith.Interpolator(pts, ring)
    for _ in range(5):
        planted = SkewPoly.random(ring, 7, rng)
        assert interp(_values(planted, pts)) == planted
    with pytest.raises(ValueError):
        interp(pts[:3])


@given(st.integers(0, 2**32 - 1), st.integers(0, 40), st.integers(0, 40))
def test_hypothesis_gcd(seed, da, db):
    from conftest import _ring

    rng = np.random.default_rng(seed)
    ring = _ring(2, 3)
    a, b = SkewPoly.random(ring, da, rng), SkewPoly.random(ring, db, rng)
    g, u, v = arith.rgcd_fast(a, b, threshold=2)
    assert (g, u, v) == rgcd_naive(a, b)
    assert arith.rdiv_fast(a, b, threshold=2) == rdiv_naive(a, b)
