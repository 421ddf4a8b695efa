"""Commutative polynomials in T with coefficients in a field or tower.

A polynomial is an array of shape (len, *ring.shape), constant term first.
The zero polynomial has length 0.
"""

import numpy as np

from ._kernels import conv
from . import fp


def trim(a):
    if len(a) == 0:
        return a
    nz = np.flatnonzero(a.reshape(len(a), -1).any(axis=1))
    return a[: nz[-1] + 1] if nz.size else a[:0]


def degree(a):
    return len(trim(a)) - 1


def pad(a, length):
    if len(a) >= length:
        return a[:length]
    out = np.zeros((length,) + a.shape[1:], np.int64)
    out[: len(a)] = a
    return out


def add(ring, a, b):
    out = pad(a, max(len(a), len(b))).copy()
    out[: len(b)] += b
    return trim(out % ring.p)


def sub(ring, a, b):
    out = pad(a, max(len(a), len(b))).copy()
    out[: len(b)] -= b
    return trim(out % ring.p)


def mul(ring, a, b):
    if len(a) == 0 or len(b) == 0:
        return ring.zeros((0,))
    return ring.reduce(conv(a, b, ring.p))


def scale(ring, c, a):
    """Multiply every coefficient of ``a`` by the ring element ``c``."""
    return ring.mul(c[None], a)


def shift(a, k):
    """Multiply by T^k (k >= 0) or drop the lowest -k coefficients."""
    if k >= 0:
        return np.concatenate([np.zeros((k,) + a.shape[1:], np.int64), a]) if len(a) else a
    return a[-k:]


def fold(ring, a, r, c=None):
    """Reduce modulo T^r - c, where ``c`` is a base-field value (None means 1)."""
    a = np.asarray(a)
    if len(a) <= r:
        return pad(a, r)
    out = pad(a, r).copy()
    rest = a[r:]
    while len(rest):
        head = rest[:r]
        if c is not None:
            head = ring.scale(c, head) if hasattr(ring, "scale") else ring.mul(c[None], head)
        out[: len(head)] += head
        out %= ring.p
        rest = rest[r:]
        if c is not None and len(rest):
            # T^{2r} = c^2 and so on: scale the remaining tail once more per block
            rest = ring.scale(c, rest) if hasattr(ring, "scale") else ring.mul(c[None], rest)
    return out % ring.p


def divmod_(ring, a, b):
    """Euclidean division over a field; the leading coefficient of b must be a unit."""
    a = trim(a)
    b = trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return ring.zeros((0,)), a
    inv_lc = ring.inv(b[-1])
    rem = a.copy()
    lb = len(b)
    q = ring.zeros((len(a) - lb + 1,))
    for i in range(len(a) - lb, -1, -1):
        top = rem[i + lb - 1]
        if not top.any():
            continue
        c = ring.mul(top, inv_lc)
        q[i] = c
        rem[i : i + lb] = ring.sub(rem[i : i + lb], ring.mul(c[None], b))
    return trim(q), trim(rem[: lb - 1])


def scalar_inverse_mod(field, a, m):
    """Inverse of ``a`` modulo ``m`` for polynomials over a base field ``field``."""
    r0, r1 = trim(m), trim(divmod_(field, a, m)[1])
    s0, s1 = field.zeros((0,)), field.one()[None]
    while len(r1):
        q, rr = divmod_(field, r0, r1)
        r0, r1 = r1, rr
        s0, s1 = s1, sub(field, s0, mul(field, q, s1))
    if len(r0) != 1:
        raise ArithmeticError("not invertible")
    return trim(field.mul(field.inv(r0[0])[None], s0))


def to_fp(a):
    """Polynomial over F_p stored with a trailing axis of length 1 -> 1-D array."""
    return fp.trim(a[..., 0])
