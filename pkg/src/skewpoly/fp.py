"""Dense univariate polynomials over F_p as 1-D int64 arrays, constant first.

Batched variants act on arrays of shape (len, ...) where the trailing axes are
independent polynomials sharing the same modulus.
"""

from functools import lru_cache

import numpy as np

from ._kernels import conv, matmul_mod


def trim(a):
    a = np.asarray(a, np.int64)
    nz = np.flatnonzero(a.reshape(len(a), -1).any(axis=1)) if a.size else []
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def pad(a, length):
    out = np.zeros(length, np.int64)
    out[: len(a)] = a[:length]
    return out


def deg(a):
    return len(trim(a)) - 1


def mul(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, np.int64)
    return conv(np.asarray(a, np.int64), np.asarray(b, np.int64), p)


def sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % p)


def add(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return trim(out % p)


def divmod_(a, b, p):
    a = trim(a).copy()
    b = trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = pow(int(b[-1]), -1, p)
    if len(a) < len(b):
        return np.zeros(0, np.int64), a
    q = np.zeros(len(a) - len(b) + 1, np.int64)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lc % p
        if c:
            q[i] = c
            a[i : i + len(b)] = (a[i : i + len(b)] - c * b) % p
    return trim(q), trim(a[: len(b) - 1])


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def mulmod(a, b, m, p):
    return rem(mul(a, b, p), m, p)


def powmod(a, e, m, p):
    result = np.array([1], np.int64)
    base = rem(a, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        base = mulmod(base, base, m, p)
        e >>= 1
    return result


def monic(a, p):
    a = trim(a)
    return a * pow(int(a[-1]), -1, p) % p


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while len(b):
        a, b = b, rem(a, b, p)
    return monic(a, p) if len(a) else a


def inv_mod(a, m, p):
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = trim(m), rem(a, m, p)
    s0, s1 = np.zeros(0, np.int64), np.array([1], np.int64)
    while len(r1):
        q, rr = divmod_(r0, r1, p)
        r0, r1 = r1, rr
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    if len(r0) != 1:
        raise ArithmeticError("not invertible modulo m")
    return trim(s0 * pow(int(r0[0]), -1, p) % p)


def is_irreducible(f, p):
    """Rabin-style test: gcd(f, x^{p^i} - x) = 1 for i <= deg/2 and f | x^{p^deg} - x."""
    f = trim(np.asarray(f, np.int64) % p)
    r = len(f) - 1
    if r <= 0:
        return False
    if r == 1:
        return True
    x = np.array([0, 1], np.int64)
    cur = x
    for i in range(1, r + 1):
        cur = powmod(cur, p, f, p)
        diff = sub(cur, x, p)
        if i <= r // 2 and len(gcd(f, diff, p)) > 1:
            return False
    return len(trim(diff)) == 0


def random_irreducible(n, p, rng):
    if n == 1:
        return np.array([int(rng.integers(0, p)), 1], np.int64)
    while True:
        g = np.concatenate((rng.integers(0, p, size=n), [1])).astype(np.int64)
        if g[0] and is_irreducible(g, p):
            return g


def first_irreducible(n, p):
    """Least monic irreducible of degree n in the order of its coefficient digits."""
    for k in range(p**n):
        digits = [(k // p**i) % p for i in range(n)]
        g = np.array(digits + [1], np.int64)
        if is_irreducible(g, p):
            return g
    raise ValueError("no irreducible polynomial found")


@lru_cache(maxsize=256)
def _reduction_matrix(modulus, length, p):
    m = np.array(modulus, np.int64)
    d = len(m) - 1
    rows = np.zeros((length, d), np.int64)
    cur = np.zeros(d, np.int64)
    cur[0] = 1
    for k in range(length):
        rows[k] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        cur = (cur - top * m[:-1]) % p
    return rows


def rem_batched(c, modulus, p):
    """Reduce the columns of ``c`` (shape (len, ...)) modulo a monic polynomial."""
    modulus = tuple(int(v) for v in modulus)
    d = len(modulus) - 1
    if len(c) <= d:
        out = np.zeros((d,) + c.shape[1:], np.int64)
        out[: len(c)] = c
        return out
    rows = _reduction_matrix(modulus, len(c), p)
    flat = c.reshape(len(c), -1)
    red = matmul_mod(rows.T, flat, p)
    return red.reshape((d,) + c.shape[1:])


def mul_batched(c, z, p):
    """Multiply every column of ``c`` (len, ...) by the scalar polynomial ``z``."""
    z = np.asarray(z, np.int64).reshape((len(z),) + (1,) * (c.ndim - 1))
    return conv(c, z, p)
