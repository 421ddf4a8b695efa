"""Skew polynomials over a tower with the commutation rule X a = sigma(a) X.

This module holds the reference (schoolbook) arithmetic that every fast
routine in the package is checked against.
"""

from __future__ import annotations

import math

import numpy as np

from ._kernels import antidiagonal_sum, matmul_mod
from . import polys

NEG_INF = -math.inf


class SkewPoly:
    """Element of L[X, sigma] stored as an array (len, r, n), constant first.

    The coefficient array is kept trimmed so the zero polynomial has length 0
    and degree ``-inf``.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        c = np.asarray(coeffs, np.int64)
        if c.ndim == 2 and ring.n == 1:
            c = c[..., None]
        if c.shape[1:] != ring.shape and len(c):
            raise ValueError("coefficient shape does not match the tower")
        if len(c) == 0:
            c = ring.zeros((0,))
        self.ring = ring
        self.coeffs = polys.trim(c % ring.p)

    # -- constructors
    @classmethod
    def zero(cls, ring):
        return cls(ring, ring.zeros((0,)))

    @classmethod
    def one(cls, ring):
        return cls(ring, ring.one()[None])

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, np.asarray(c)[None])

    @classmethod
    def monomial(cls, ring, k, c=None):
        out = ring.zeros((k + 1,))
        out[k] = ring.one() if c is None else c
        return cls(ring, out)

    @classmethod
    def from_coords(cls, ring, rows):
        """From nested lists of power-basis coordinates, one list per coefficient."""
        if len(rows) == 0:
            return cls.zero(ring)
        return cls(ring, np.stack([ring.elem(r) for r in rows]))

    @classmethod
    def random(cls, ring, deg, rng, monic=False):
        """Uniform polynomial of degree exactly ``deg`` (leading coefficient nonzero)."""
        if deg < 0:
            return cls.zero(ring)
        c = ring.random(rng, (deg + 1,))
        if monic:
            c[deg] = ring.one()
        else:
            while not c[deg].any():
                c[deg] = ring.random(rng)
        return cls(ring, c)

    # -- basic properties
    @property
    def degree(self):
        return len(self.coeffs) - 1 if len(self.coeffs) else NEG_INF

    def is_zero(self):
        return len(self.coeffs) == 0

    @property
    def lc(self):
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zeros()

    def padded(self, length):
        return polys.pad(self.coeffs, length)

    def to_coords(self):
        return [[int(v) for v in c.reshape(-1)] for c in self.coeffs]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"SkewPoly({self.ring.describe()}, {self.ring_format()})"

    def ring_format(self):
        return "[" + ",".join(self.ring.format(c) for c in self.coeffs) + "]"

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ring is other.ring and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            raise TypeError("expected a SkewPoly")
        if other.ring is not self.ring:
            raise ValueError("operands live in different towers")

    # -- ring operations
    def __add__(self, other):
        self._check(other)
        return SkewPoly(self.ring, polys.add(self.ring, self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return SkewPoly(self.ring, polys.sub(self.ring, self.coeffs, other.coeffs))

    def __neg__(self):
        return SkewPoly(self.ring, self.ring.neg(self.coeffs))

    def __mul__(self, other):
        self._check(other)
        return skew_mul_naive(self, other)

    def scale_left(self, c):
        """c * A for a tower element c."""
        return SkewPoly(self.ring, self.ring.mul(np.asarray(c)[None], self.coeffs))

    def scale_right(self, c):
        """A * c = sum a_i sigma^i(c) X^i."""
        if self.is_zero():
            return self
        sig = self.ring.frob_all(np.asarray(c))
        idx = np.arange(len(self.coeffs)) % self.ring.r
        return SkewPoly(self.ring, self.ring.mul(self.coeffs, sig[idx]))

    def shift(self, k):
        """A * X^k (k >= 0), or the quotient of A by X^{-k} on the right (k < 0)."""
        return SkewPoly(self.ring, polys.shift(self.coeffs, k))

    def truncate(self, k):
        """Keep coefficients of X^0 .. X^{k-1}."""
        return SkewPoly(self.ring, self.coeffs[:k])

    def monic(self):
        return self.scale_left(self.ring.inv(self.lc))

    def __call__(self, v):
        return skew_eval(self, v)


def skew_add(a, b):
    return a + b


def skew_scale(c, a):
    return a.scale_left(c)


def _frob_table(ring, coeffs):
    """sigma^s(coeffs) for s = 0..r-1, shape (r, len, r, n)."""
    return ring.frob_all(coeffs)


def skew_mul_naive(a, b, chunk=1 << 21):
    """Schoolbook product sum_{i,j} a_i sigma^i(b_j) X^{i+j}.

    Every term of the double sum is formed explicitly; the loops are carried
    out as batched array operations over blocks of i.
    """
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return SkewPoly.zero(ring)
    la, lb = len(a.coeffs), len(b.coeffs)
    sig_b = _frob_table(ring, b.coeffs)
    r, n, p = ring.r, ring.n, ring.p
    out = np.zeros((la + lb - 1,) + ring.shape, np.int64)
    per_row = max(1, lb * r * r * n * n)
    step = max(1, chunk // per_row)
    for start in range(0, la, step):
        ai = a.coeffs[start : start + step]
        idx = np.arange(start, start + len(ai)) % r
        terms = ring.mul(ai[:, None], sig_b[idx])
        m = len(ai)
        # place row i at offset start + i: anti-diagonal collapse over (i, j)
        flat = terms.reshape(m, lb, -1)
        flat = np.moveaxis(flat, -1, 0)
        summed = np.moveaxis(antidiagonal_sum(flat), 0, -1) % p
        out[start : start + m + lb - 1] += summed.reshape((m + lb - 1,) + ring.shape)
    return SkewPoly(ring, out % p)


def skew_eval(a, v):
    """A(v) = sum a_i sigma^i(v) for a tower element (or batch) v."""
    ring = a.ring
    v = np.asarray(v, np.int64)
    if a.is_zero():
        return np.zeros_like(v)
    sig = ring.frob_all(v)
    idx = np.arange(len(a.coeffs)) % ring.r
    # terms[i] = a_i * sigma^i(v)
    lead = v.shape[:-2]
    coeffs = a.coeffs.reshape((len(a.coeffs),) + (1,) * len(lead) + ring.shape)
    terms = ring.mul(coeffs, sig[idx])
    return terms.sum(axis=0) % ring.p


def reduce_cyclic(a, modulus=None):
    """A mod X^r - c for a central constant c (base-field value; None means 1)."""
    r = a.ring.r
    return SkewPoly(a.ring, polys.fold(a.ring, a.coeffs, r, modulus))


def operator_matrix(a):
    """Matrix of v -> A(v) on the power basis (columns are images of x^k).

    Returns shape (r, r, n) where the trailing axis is the base-field coordinate.
    """
    ring = a.ring
    a = reduce_cyclic(a)
    r = ring.r
    # column k is A(x^k) = sum_i a_i sigma^i(x^k); sigma^i(x^k) is column k of F^i
    images = np.zeros((r, r) + ring.shape, np.int64)  # [i, k] -> element
    images[..., 0] = np.swapaxes(ring._frob_pows, 1, 2)
    terms = ring.mul(a.coeffs[:, None], images[: len(a.coeffs)])
    cols = terms.sum(axis=0) % ring.p  # [k] -> element
    return np.moveaxis(cols, 0, 1)


def matrix_to_coords(m):
    """(r, m, n) coordinate matrix -> stacked elements (m, r, n)."""
    return np.moveaxis(m, 1, 0)


# -- division


def rdiv_naive(a, b):
    """Right division A = Q B + R with deg R < deg B."""
    ring = a.ring
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    db = len(b.coeffs) - 1
    rem = a.coeffs.copy()
    if len(rem) <= db:
        return SkewPoly.zero(ring), a
    q = ring.zeros((len(rem) - db,))
    sig_b = ring.frob_all(b.coeffs)
    inv_sig_lc = ring.inv(sig_b[:, -1])  # inverse of sigma^s(lc B)
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if not top.any():
            continue
        s = k % ring.r
        c = ring.mul(top, inv_sig_lc[s])
        q[k] = c
        rem[k : k + db + 1] = ring.sub(rem[k : k + db + 1], ring.mul(c[None], sig_b[s]))
    return SkewPoly(ring, q), SkewPoly(ring, rem[:db])


def ldiv_naive(a, b):
    """Left division A = B Q + R with deg R < deg B."""
    ring = a.ring
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    db = len(b.coeffs) - 1
    rem = a.coeffs.copy()
    if len(rem) <= db:
        return SkewPoly.zero(ring), a
    q = ring.zeros((len(rem) - db,))
    inv_lc = ring.inv(b.coeffs[-1])
    r = ring.r
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if not top.any():
            continue
        # B c X^k has top coefficient lc(B) sigma^{db}(c)
        c = ring.frob(ring.mul(inv_lc, top), (-db) % r)
        q[k] = c
        term = skew_mul_naive(b, SkewPoly.monomial(ring, k, c))
        rem[: len(term.coeffs)] = ring.sub(rem[: len(term.coeffs)], term.coeffs)
    return SkewPoly(ring, q), SkewPoly(ring, rem[:db])


# -- gcd and lcm


def rgcd_naive(a, b):
    """Monic right gcd G with left Bezout cofactors: G = U A + V B."""
    ring = a.ring
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    one, zero = SkewPoly.one(ring), SkewPoly.zero(ring)
    r0, r1 = a, b
    u0, v0, u1, v1 = one, zero, zero, one
    while not r1.is_zero():
        q, rem = rdiv_naive(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    inv = ring.inv(r0.lc)
    return r0.scale_left(inv), u0.scale_left(inv), v0.scale_left(inv)


def _rgcd_with_final_row(a, b):
    one, zero = SkewPoly.one(a.ring), SkewPoly.zero(a.ring)
    r0, r1 = a, b
    u0, v0, u1, v1 = one, zero, zero, one
    while not r1.is_zero():
        q, rem = rdiv_naive(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, (u0, v0), (u1, v1)


def llcm_naive(a, b):
    """Monic least left common multiple: the smallest M = S A = T B."""
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm with the zero polynomial is undefined")
    a._check(b)
    _, _, (u1, _) = _rgcd_with_final_row(a, b)
    return (u1 * a).monic()
