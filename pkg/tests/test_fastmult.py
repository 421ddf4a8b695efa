import math

import numpy as np
import pytest

from skewpoly import GF, SkewPoly, skew_mul_naive
from skewpoly import fastmult as fm
from skewpoly import modmult as mm

GRID = [(2, 1), (2, 3), (3, 2), (5, 4), (7, 3), (2, 8), (3, 6)]


def test_extension_degree_regression():
    # p = 2, r = 4, d = 32 (product degree 64)
    assert fm.choose_extension_degree(64, 2, 4) == 10


@pytest.mark.parametrize("D,p,r", [(64, 2, 4), (128, 2, 1), (128, 3, 3), (40, 5, 2), (128, 7, 8), (16, 2, 16)])
def test_extension_degree_conditions(D, p, r):
    n = fm.choose_extension_degree(D, p, r)
    q = p**n
    assert q >= max(64 * n, 8 * r)
    assert 4 * D * (D + n * r) <= n * q * (n * r) ** 2
    assert fm.batch_success_probability(n, p, r, fm.modulus_count(D, n, r)) >= fm.TARGET_SUCCESS


@pytest.mark.parametrize("p,n", [(2, 1), (2, 4), (2, 6), (3, 2), (3, 3), (5, 2)])
def test_generator_count_brute_force(p, n):
    if n == 1:
        assert fm.generator_count(n, p) == p
        return
    k = GF(p, _irreducible(p, n))
    count = 0
    for idx in range(p**n):
        e = np.array([(idx // p**i) % p for i in range(n)], np.int64)
        count += len(k.min_poly(e)) - 1 == n
    assert fm.generator_count(n, p) == count


def _irreducible(p, n):
    from skewpoly import fp

    return tuple(int(c) for c in fp.random_irreducible(n, p, np.random.default_rng(0)))


def test_modulus_count():
    assert fm.modulus_count(10, 3, 4) == 1
    assert fm.modulus_count(64, 10, 4) == 2
    assert fm.modulus_count(0, 5, 5) == 1


@pytest.mark.parametrize("p,r", GRID)
def test_sampling_small_bound_gives_one_modulus(make_ring, rng, p, r):
    ring = make_ring(p, r)
    n = fm.choose_extension_degree(4, p, r)
    ms = fm.sample_moduli(n * r // 2 - 1, ring, rng)
    assert ms.t == 1 and ms.n == n


@pytest.mark.parametrize("p,r", [(2, 4), (3, 2), (5, 3)])
def test_moduli_are_distinct_generators(make_ring, rng, p, r):
    ring = make_ring(p, r)
    ms = fm.sample_moduli(200, ring, rng)
    assert ms.t == fm.modulus_count(200, ms.n, r)
    assert len({tuple(z) for z in ms.Z}) == ms.t
    assert all(len(z) - 1 == ms.n for z in ms.Z)


@pytest.mark.parametrize("p,r", GRID)
def test_crt_reconstruction(make_ring, rng, p, r):
    ring = make_ring(p, r)
    ms = fm.sample_moduli(90, ring, rng)
    bound = ms.t * ms.n * r
    planted = SkewPoly.random(ring, bound - 1, rng)
    residues = [mm.split_strands(mm.reduce_central(planted, z).coeffs[..., 0], r, ms.n) for z in ms.Z]
    assert fm.skew_crt_reconstruct(residues, ms, ring) == planted
    zero = [np.zeros((ms.n, r, r), np.int64)] * ms.t
    assert fm.skew_crt_reconstruct(zero, ms, ring).is_zero()
    single = fm.sample_moduli(3, ring, rng)
    small = SkewPoly.random(ring, 3, rng)
    res = mm.split_strands(mm.reduce_central(small, single.Z[0]).coeffs[..., 0], r, single.n)
    assert fm.skew_crt_reconstruct([res], single, ring) == small


@pytest.mark.parametrize("p,r", GRID)
@pytest.mark.parametrize("da,db", [(0, 0), (5, 7), (33, 20), (64, 64)])
def test_mult_crt(make_ring, rng, p, r, da, db):
    ring = make_ring(p, r)
    a, b = SkewPoly.random(ring, da, rng), SkewPoly.random(ring, db, rng)
    assert fm.mult_crt(a, b, rng) == skew_mul_naive(a, b)


def test_mult_crt_examples(make_ring, rng):
    ring = make_ring(2, 3)
    a = SkewPoly.random(ring, 5, rng)
    assert fm.mult_crt(a, SkewPoly.one(ring), rng) == a
    stats = {}
    assert fm.mult_crt(SkewPoly.zero(ring), a, rng, stats=stats).is_zero()
    assert stats == {}
    b = SkewPoly.random(ring, 7, rng)
    assert fm.mult_crt(a, b, rng, stats=stats, strict=True) == skew_mul_naive(a, b)
    assert stats["batches"] >= 1 and stats["retries"] >= 0


def test_mult_crt_threads_and_shared_moduli(make_ring, rng):
    ring = make_ring(3, 4)
    a, b = SkewPoly.random(ring, 40, rng), SkewPoly.random(ring, 40, rng)
    ms = fm.sample_moduli(80, ring, rng)
    assert fm.mult_crt(a, b, rng, moduli=ms, workers=2) == skew_mul_naive(a, b)
    # a set too small for the product is ignored, not misused
    tiny = fm.sample_moduli(3, ring, rng)
    assert fm.mult_crt(a, b, rng, moduli=tiny) == skew_mul_naive(a, b)


@pytest.mark.parametrize("p,r", [(2, 4), (3, 5), (5, 3), (7, 8), (2, 8)])
def test_mult_small_degree(make_ring, rng, p, r):
    ring = make_ring(p, r)
    for d1 in range(r):
        d2 = r - 1 - d1
        a, b = SkewPoly.random(ring, d1, rng), SkewPoly.random(ring, d2, rng)
        assert fm.mult_small_degree(a, b) == skew_mul_naive(a, b)
    c1, c2 = ring.random(rng), ring.random(rng)
    prod = fm.mult_small_degree(SkewPoly.constant(ring, c1), SkewPoly.constant(ring, c2))
    assert prod == SkewPoly.constant(ring, ring.mul(c1, c2))
    if r >= 2:
        x_times_c = fm.mult_small_degree(SkewPoly.monomial(ring, 1), SkewPoly.constant(ring, c1))
        assert x_times_c == SkewPoly.monomial(ring, 1, ring.frob(c1, 1))
    with pytest.raises(ValueError):
        fm.mult_small_degree(SkewPoly.random(ring, r, rng), SkewPoly.one(ring))


def test_multiply_dispatch(make_ring, rng, monkeypatch):
    ring = make_ring(2, 8)
    calls = []
    monkeypatch.setattr(fm, "mult_crt", _spy(fm.mult_crt, "crt", calls))
    monkeypatch.setattr(fm, "mult_small_degree", _spy(fm.mult_small_degree, "small", calls))
    cases = [(2, 2, None, []), (4, 3, 2, ["small"]), (4, 4, 2, ["crt"]), (30, 30, None, ["crt"])]
    for da, db, thr, path in cases:
        calls.clear()
        a, b = SkewPoly.random(ring, da, rng), SkewPoly.random(ring, db, rng)
        assert fm.multiply(a, b, rng, naive_threshold=thr) == skew_mul_naive(a, b)
        assert calls == path


def _spy(fn, name, calls):
    def wrapped(*args, **kwargs):
        calls.append(name)
        return fn(*args, **kwargs)

    return wrapped


def test_single_shot_rate_matches_prediction(make_ring):
    # p = 2, r = 4, product degree 64: n = 10, t = 2
    ring = make_ring(2, 4)
    n = fm.choose_extension_degree(64, 2, 4)
    t = fm.modulus_count(64, n, 4)
    rng = np.random.default_rng(5)
    trials = 100
    ok = 0
    for _ in range(trials):
        try:
            fm.sample_moduli(64, ring, rng, max_batches=1)
            ok += 1
        except fm.SamplingError:
            pass
    predicted = fm.batch_success_probability(n, 2, 4, t)
    sd = math.sqrt(predicted * (1 - predicted) / trials)
    assert abs(ok / trials - predicted) < 4 * sd + 0.02
