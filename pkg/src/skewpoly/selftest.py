"""Property suites over a (p, r) grid, reported as JSON lines.

Each report line is one executed check:
    {"suite": ..., "check": ..., "params": {"p": .., "r": .., "seed": ..}, "verdict": "pass"|"fail"}
A check that raises is reported as "fail" with an "error" field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import arith, evalinterp, fastmult, io, modmult
from .fields import ExtField, default_modulus
from .gabidulin import GabidulinCode, random_rank_error
from .linalg import rank
from .skew import (
    SkewPoly,
    llcm_naive,
    rdiv_naive,
    ldiv_naive,
    reduce_cyclic,
    rgcd_naive,
    skew_eval,
    skew_mul_naive,
)

DEFAULT_PRIMES = (2, 3, 5, 7)
DEFAULT_DEGREES = tuple(range(1, 9))


@dataclass
class Context:
    ring: ExtField
    rng: np.random.Generator
    max_degree: int
    trials: int
    fault: bool = False

    def oracle(self, a, b):
        """Schoolbook product; the fault flag corrupts it on purpose."""
        prod = skew_mul_naive(a, b)
        if self.fault:
            prod = prod + SkewPoly.one(self.ring)
        return prod

    def poly(self, deg=None):
        d = int(self.rng.integers(0, self.max_degree + 1)) if deg is None else deg
        return SkewPoly.random(self.ring, d, self.rng)

    def free_family(self, d):
        ring, p = self.ring, self.ring.p
        while True:
            pts = ring.random(self.rng, (d,))
            if rank(pts.reshape(d, -1), p) == d:
                return pts


def _repeat(fn):
    def run(ctx):
        return all(fn(ctx) for _ in range(ctx.trials))

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# -- gf-tower


@_repeat
def frobenius_order(ctx):
    v = ctx.ring.random(ctx.rng)
    return np.array_equal(ctx.ring.frob(v, ctx.ring.r), v)


@_repeat
def norm_in_base(ctx):
    ring = ctx.ring
    u = ring.random_unit(ctx.rng)
    nrm = ring.norm(u)
    return nrm.any() and np.array_equal(ring.mul(u, ring.inv(u)), ring.one())


# -- skew-core


@_repeat
def associativity(ctx):
    a, b, c = (ctx.poly(int(ctx.rng.integers(0, 20))) for _ in range(3))
    return (a * b) * c == a * (b * c)


@_repeat
def eval_homomorphism(ctx):
    a, b = ctx.poly(), ctx.poly()
    v = ctx.ring.random(ctx.rng)
    return np.array_equal(skew_eval(ctx.oracle(a, b), v), skew_eval(a, skew_eval(b, v)))


@_repeat
def division_identities(ctx):
    a, b = ctx.poly(), ctx.poly()
    q, r = rdiv_naive(a, b)
    q2, r2 = ldiv_naive(a, b)
    return ctx.oracle(q, b) + r == a and ctx.oracle(b, q2) + r2 == a and r.degree < b.degree


# -- eval-interp


@_repeat
def remainder_degrees(ctx):
    ring = ctx.ring
    seq = evalinterp.remainder_sequence(ring, evalinterp._cyclic_modulus(ring), ring.normal_basis)
    return [len(s) - 1 for s in seq] == list(range(ring.r, -1, -1))


@_repeat
def interpolation_roundtrip(ctx):
    ring = ctx.ring
    a = ctx.poly(int(ctx.rng.integers(0, ring.r)))
    vals = evalinterp.eval_on_normal_basis(a)
    return evalinterp.interpolate_full(vals, ring) == a


@_repeat
def small_interpolation(ctx):
    ring = ctx.ring
    n = int(ctx.rng.integers(1, ring.r + 1))
    alphas = ring.random(ctx.rng, (n,))
    got = evalinterp.small_degree_interpolation(alphas, n, ring)
    pts = ring.normal_basis[:n]
    return got.degree < n and np.array_equal(np.stack([got(x) for x in pts]), alphas)


# -- mod-mult


@_repeat
def mod_cyclic(ctx):
    a, b = ctx.poly(), ctx.poly()
    return modmult.mod_mul_cyclic(a, b) == reduce_cyclic(ctx.oracle(a, b))


@_repeat
def mod_twisted(ctx):
    ring = ctx.ring
    a, b = ctx.poly(), ctx.poly()
    tw = modmult.TwistedBasisContext(ring, ring.random_unit(ctx.rng), ctx.rng)
    return modmult.mod_mul_a(a, b, tw) == reduce_cyclic(ctx.oracle(a, b), tw.a)


@_repeat
def mod_central(ctx):
    ring = ctx.ring
    a, b = ctx.poly(), ctx.poly()
    n = int(ctx.rng.integers(1, 3))
    lift = ring.lift(n, ctx.rng)
    while True:
        try:
            ext = modmult.ExtensionContext(lift, lift.random(ctx.rng), ctx.rng)
            break
        except (modmult.ModulusError, ArithmeticError):
            continue
    expected = modmult.reduce_central(ctx.oracle(a, b), ext.Z)
    return modmult.mod_mul_Z(a, b, ext.lam, lift, ext) == expected


# -- fast-mult


@_repeat
def crt_product(ctx):
    a, b = ctx.poly(), ctx.poly()
    return fastmult.mult_crt(a, b, ctx.rng) == ctx.oracle(a, b)


@_repeat
def small_degree_product(ctx):
    r = ctx.ring.r
    d1 = int(ctx.rng.integers(0, r))
    d2 = int(ctx.rng.integers(0, r - d1))
    a, b = ctx.poly(d1), ctx.poly(d2)
    return fastmult.mult_small_degree(a, b) == ctx.oracle(a, b)


@_repeat
def dispatch_product(ctx):
    a, b = ctx.poly(), ctx.poly()
    return fastmult.multiply(a, b, ctx.rng) == ctx.oracle(a, b)


# -- skew-arith


@_repeat
def fast_division(ctx):
    a, b = ctx.poly(), ctx.poly()
    q, r = arith.rdiv_fast(a, b, threshold=2)
    return (q, r) == rdiv_naive(a, b) and ctx.oracle(q, b) + r == a


@_repeat
def fast_gcd(ctx):
    a, b = ctx.poly(), ctx.poly()
    g, u, v = arith.rgcd_fast(a, b, threshold=2)
    g0, u0, v0 = rgcd_naive(a, b)
    return (g, u, v) == (g0, u0, v0) and ctx.oracle(u, a) + ctx.oracle(v, b) == g


@_repeat
def fast_lcm(ctx):
    a, b = ctx.poly(), ctx.poly()
    m = arith.llcm_fast(a, b, threshold=2)
    g = rgcd_naive(a, b)[0]
    return m == llcm_naive(a, b) and m.degree + g.degree == a.degree + b.degree


@_repeat
def subspace_and_evaluation(ctx):
    ring = ctx.ring
    d = int(ctx.rng.integers(1, ring.r + 1))
    pts = ctx.free_family(d)
    m = arith.min_subspace_poly(pts, ring)
    if m.degree != d or any(m(x).any() for x in pts):
        return False
    a = ctx.poly()
    expected = np.stack([skew_eval(a, x) for x in pts])
    tree = arith.multieval(a, pts, "tree")
    op = arith.multieval(a, pts, "operator")
    return np.array_equal(tree, expected) and np.array_equal(op, expected)


@_repeat
def general_interpolation(ctx):
    ring = ctx.ring
    d = int(ctx.rng.integers(1, ring.r + 1))
    pts = ctx.free_family(d)
    planted = ctx.poly(d - 1)
    vals = np.stack([skew_eval(planted, x) for x in pts])
    return arith.interpolate_general(pts, vals, ring) == planted


# -- gabidulin


@_repeat
def gabidulin_roundtrip(ctx):
    ring = ctx.ring
    n = ring.r
    k = int(ctx.rng.integers(1, n + 1))
    code = GabidulinCode(ring, ctx.free_family(n), k)
    msg = SkewPoly(ring, ring.random(ctx.rng, (k,)))
    t = int(ctx.rng.integers(0, code.t_max + 1))
    received = ring.add(code.encode(msg), random_rank_error(ring, n, t, ctx.rng))
    return code.decode(received) == msg


# -- io


@_repeat
def serialization_roundtrip(ctx):
    ring = ctx.ring
    a = ctx.poly()
    back = io.parse_poly(io.format_poly(a), ring)
    p, f = io.parse_field(io.format_field(ring))
    return back == a and p == ring.p and list(f) == [int(c) for c in ring.f]


SUITES = {
    "gf-tower": [frobenius_order, norm_in_base],
    "skew-core": [associativity, eval_homomorphism, division_identities],
    "eval-interp": [remainder_degrees, interpolation_roundtrip, small_interpolation],
    "mod-mult": [mod_cyclic, mod_twisted, mod_central],
    "fast-mult": [crt_product, small_degree_product, dispatch_product],
    "skew-arith": [fast_division, fast_gcd, fast_lcm, subspace_and_evaluation, general_interpolation],
    "gabidulin": [gabidulin_roundtrip],
    "io": [serialization_roundtrip],
}


def check_count(primes, degrees, suites=None):
    """Number of report lines for a grid: one per (cell, suite, check)."""
    names = suites or list(SUITES)
    return len(primes) * len(degrees) * sum(len(SUITES[s]) for s in names)


def run(seed=0, primes=DEFAULT_PRIMES, degrees=DEFAULT_DEGREES, max_degree=64, trials=2,
        suites=None, fault=False):
    """Yield one report dict per executed check."""
    names = suites or list(SUITES)
    for p in primes:
        for r in degrees:
            ring = ExtField(p, default_modulus(p, r), rng=np.random.default_rng([seed, p, r]))
            for si, suite in enumerate(names):
                for ci, check in enumerate(SUITES[suite]):
                    rng = np.random.default_rng([seed, p, r, si, ci])
                    ctx = Context(ring, rng, max_degree, trials, fault)
                    line = {"suite": suite, "check": check.__name__,
                            "params": {"p": p, "r": r, "seed": seed, "max_degree": max_degree, "trials": trials}}
                    try:
                        ok = bool(check(ctx))
                    except Exception as exc:  # reported per case
                        ok = False
                        line["error"] = f"{type(exc).__name__}: {exc}"
                    line["verdict"] = "pass" if ok else "fail"
                    yield line


def format_line(line):
    return json.dumps(line, sort_keys=True, separators=(",", ":"))
