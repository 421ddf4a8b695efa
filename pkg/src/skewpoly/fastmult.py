"""Full skew multiplication: CRT over central moduli, small degrees, dispatch."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import fp
from .evalinterp import NormalBasisContext, eval_on_normal_basis, eval_truncated, small_degree_interpolation
from .fields import NotInvertibleError
from .linalg import ext_mat_mul
from .modmult import ExtensionContext, ModulusError, join_strands, reduce_central
from .skew import SkewPoly, skew_eval, skew_mul_naive

BATCH_RETRIES = 64
NAIVE_THRESHOLD = 8
# designed one-shot batch success probability (the guarantee needed is 1/2)
TARGET_SUCCESS = 2 / 3


class SamplingError(RuntimeError):
    pass


def generator_count(n, p):
    """Number of elements of F_{p^n} that generate it over F_p (Moebius inversion)."""
    total = 0
    for m in range(1, n + 1):
        if n % m == 0:
            total += _moebius(n // m) * p**m
    return total


def _moebius(k):
    out, f = 1, 2
    while f * f <= k:
        if k % f == 0:
            k //= f
            if k % f == 0:
                return 0
            out = -out
        f += 1
    return -out if k > 1 else out


def batch_success_probability(n, p, r, t):
    """Exact probability that t uniform lambda' give generating, pairwise non-conjugate norms.

    L' splits as g = gcd(n, r) copies of a field of degree f = r/g over K'; the
    norm is uniform on nonzero values and vanishes with probability
    1 - (1 - q^{-nf})^g. Given all norms generate, each conjugacy class holds
    exactly n of the c_n generators.
    """
    q = p
    g = math.gcd(n, r)
    f = r // g
    c = generator_count(n, p)
    nonzero = (1 - q ** (-n * f)) ** g
    gen = nonzero * c / (q**n - 1)
    prob = gen**t
    for k in range(1, t):
        prob *= max(0.0, 1 - k * n / c)
    return prob


def choose_extension_degree(degree_bound, p, r):
    """Least n with p^n >= max(64 n, 8 r), (4D/(nr)) (D/(nr) + 1) <= n p^n and a one-shot
    batch success probability of at least TARGET_SUCCESS for the resulting modulus count.
    """
    n = 1
    while True:
        q = p**n
        nr = n * r
        if (
            q >= max(64 * n, 8 * r)
            and 4 * degree_bound * (degree_bound + nr) <= n * q * nr * nr
            and batch_success_probability(n, p, r, modulus_count(degree_bound, n, r)) >= TARGET_SUCCESS
        ):
            return n
        n += 1


def modulus_count(degree_bound, n, r):
    """Number of moduli of degree n needed to pin down a product of degree <= D."""
    return max(1, math.ceil((degree_bound + 1) / (n * r)))


class ModulusSet:
    """t moduli Z_i(X^r) of degree n r, with their multiplication contexts."""

    def __init__(self, lift, contexts, degree_bound, attempts):
        self.lift = lift
        self.n = lift.n
        self.contexts = contexts
        self.lambdas = [c.lam for c in contexts]
        self.norms = [c.a for c in contexts]
        self.Z = [c.Z for c in contexts]
        self.t = len(contexts)
        self.degree_bound = degree_bound
        self.attempts = attempts
        self._garner = None

    def garner_data(self):
        """Running products M_i = Z_1 ... Z_i and inverses of M_{i-1} mod Z_i."""
        if self._garner is None:
            p = self.lift.p
            prods = [np.array(self.Z[0])]
            invs = [None]
            for z in self.Z[1:]:
                invs.append(fp.inv_mod(prods[-1], z, p))
                prods.append(fp.mul(prods[-1], z, p))
            self._garner = (prods, invs)
        return self._garner


def _sample_batch(ring, lift, t, rng):
    contexts = []
    seen = set()
    for _ in range(t):
        lam = lift.random(rng)
        try:
            ctx = ExtensionContext(lift, lam, rng)
        except (ModulusError, NotInvertibleError):
            return None
        key = tuple(int(v) for v in ctx.Z)
        if key in seen:
            return None
        seen.add(key)
        contexts.append(ctx)
    return contexts


def sample_moduli(degree_bound, ring, rng, n=None, max_batches=BATCH_RETRIES):
    """Sample t pairwise coprime central moduli covering degree ``degree_bound``.

    A batch is rejected when a norm is zero or does not generate F_{p^n}, or
    when two norms share a minimal polynomial.
    """
    if n is None:
        n = choose_extension_degree(max(degree_bound, 1), ring.p, ring.r)
    lift = ring.lift(n)
    t = modulus_count(degree_bound, n, ring.r)
    for attempt in range(1, max_batches + 1):
        contexts = _sample_batch(ring, lift, t, rng)
        if contexts is not None:
            return ModulusSet(lift, contexts, degree_bound, attempt)
    raise SamplingError("modulus sampling exceeded its retry cap")


def skew_crt_reconstruct(residues, moduli, ring):
    """P of degree < t n r with P = residue_i mod Z_i(X^r).

    Residues are strand arrays (n, r, r): index k along the first axis is the
    coefficient of (X^r)^k in strand j. Every (strand, coordinate) pair is an
    independent CRT over F_p[T], solved together by Garner's scheme.
    """
    p = ring.p
    prods, invs = moduli.garner_data()
    acc = np.asarray(residues[0], np.int64)
    for i in range(1, len(residues)):
        z = moduli.Z[i]
        diff = (np.asarray(residues[i]) - fp.rem_batched(acc, z, p)) % p
        coef = fp.rem_batched(fp.mul_batched(diff, invs[i], p), z, p)
        step = fp.mul_batched(coef, prods[i - 1], p)
        grown = np.zeros((max(len(acc), len(step)),) + acc.shape[1:], np.int64)
        grown[: len(acc)] += acc
        grown[: len(step)] += step
        acc = grown % p
    return join_strands(acc, ring)


def spot_check(a1, a2, prod, rng):
    """Compare prod and a1 a2 as operators on one random vector."""
    v = a1.ring.random(rng)
    return np.array_equal(skew_eval(prod, v), skew_eval(a1, skew_eval(a2, v)))


def _residue(ctx, a1, a2):
    return ctx.multiply_strands(reduce_central(a1, ctx.Z), reduce_central(a2, ctx.Z))


def mult_crt(a1, a2, rng=None, stats=None, strict=False, moduli=None, workers=1):
    """A1 A2 through reductions modulo sampled central moduli and skew CRT.

    Las Vegas: the reconstruction is accepted after a random operator spot
    check (or a full naive comparison with ``strict``) and moduli are resampled
    otherwise. ``stats`` (a dict) receives the retry and sampling counts.
    ``workers`` > 1 computes the residue products in a thread pool.
    """
    ring = a1.ring
    a1._check(a2)
    if a1.is_zero() or a2.is_zero():
        return SkewPoly.zero(ring)
    rng = rng if rng is not None else np.random.default_rng(0)
    bound = int(a1.degree + a2.degree)
    retries = 0
    while True:
        reuse = moduli is not None and retries == 0 and moduli.t * moduli.n * ring.r > bound
        ms = moduli if reuse else sample_moduli(bound, ring, rng)
        if stats is not None:
            stats["batches"] = stats.get("batches", 0) + ms.attempts
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                residues = list(pool.map(lambda c: _residue(c, a1, a2), ms.contexts))
        else:
            residues = [_residue(c, a1, a2) for c in ms.contexts]
        prod = SkewPoly(ring, skew_crt_reconstruct(residues, ms, ring).coeffs[: bound + 1])
        ok = prod == skew_mul_naive(a1, a2) if strict else spot_check(a1, a2, prod, rng)
        if ok:
            break
        retries += 1
    if stats is not None:
        stats["retries"] = stats.get("retries", 0) + retries
    return prod


def mult_small_degree(a1, a2, ctx=None):
    """A1 A2 for deg A1 + deg A2 < r by evaluating on b_0..b_d and interpolating."""
    ring = a1.ring
    a1._check(a2)
    if a1.is_zero() or a2.is_zero():
        return SkewPoly.zero(ring)
    d = int(a1.degree + a2.degree)
    if d >= ring.r:
        raise ValueError("small-degree multiplication needs deg A1 + deg A2 < r")
    ctx = ctx or NormalBasisContext.of(ring)
    vals2 = eval_truncated(a2, d + 1, ctx)  # A2(b_0..b_d)
    op1 = ext_mat_mul(np.moveaxis(eval_on_normal_basis(a1, ctx), 0, 1), ring.omega, ring.base)
    vals = ext_mat_mul(op1, np.moveaxis(vals2, 0, 1), ring.base)
    return small_degree_interpolation(np.moveaxis(vals, 1, 0), d + 1, ring, ctx)


def multiply(a1, a2, rng=None, naive_threshold=None, stats=None, workers=1, moduli=None):
    """A1 A2, choosing naive, small-degree or CRT multiplication by total degree.

    ``moduli`` (a ModulusSet covering the product degree) is handed to the CRT
    path to skip sampling.
    """
    a1._check(a2)
    if a1.is_zero() or a2.is_zero():
        return SkewPoly.zero(a1.ring)
    d = a1.degree + a2.degree
    limit = NAIVE_THRESHOLD if naive_threshold is None else naive_threshold
    if d <= limit:
        return skew_mul_naive(a1, a2)
    if d < a1.ring.r:
        return mult_small_degree(a1, a2)
    return mult_crt(a1, a2, rng=rng, stats=stats, workers=workers, moduli=moduli)
