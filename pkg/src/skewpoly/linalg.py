"""Dense linear algebra over F_p and over F_{p^n}.

Matrices over F_p are 2-D int64 arrays. Matrices over a :class:`~skewpoly.fields.GF`
of degree n carry a trailing coordinate axis: shape (rows, cols, n).
"""

import numpy as np

from ._kernels import antidiagonal_sum, matmul_mod

STRASSEN_THRESHOLD = 64


class SingularMatrixError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


def _strassen(a, b, p, threshold):
    n = a.shape[0]
    if n <= threshold or n % 2 or a.shape != b.shape or a.shape[0] != a.shape[1]:
        return matmul_mod(a, b, p)
    h = n // 2
    a11, a12, a21, a22 = a[:h, :h], a[:h, h:], a[h:, :h], a[h:, h:]
    b11, b12, b21, b22 = b[:h, :h], b[:h, h:], b[h:, :h], b[h:, h:]

    def mm(x, y):
        return _strassen(x % p, y % p, p, threshold)

    m1 = mm(a11 + a22, b11 + b22)
    m2 = mm(a21 + a22, b11)
    m3 = mm(a11, b12 - b22)
    m4 = mm(a22, b21 - b11)
    m5 = mm(a11 + a12, b22)
    m6 = mm(a21 - a11, b11 + b12)
    m7 = mm(a12 - a22, b21 + b22)
    out = np.empty_like(a)
    out[:h, :h] = m1 + m4 - m5 + m7
    out[:h, h:] = m3 + m5
    out[h:, :h] = m2 + m4
    out[h:, h:] = m1 - m2 + m3 + m6
    return out % p


def mat_mul(a, b, p, threshold=None):
    """Product of two matrices over F_p (Strassen above ``threshold``)."""
    a = np.asarray(a, np.int64)
    b = np.asarray(b, np.int64)
    if a.shape[-1] != b.shape[0]:
        raise ValueError("incompatible matrix dimensions")
    t = STRASSEN_THRESHOLD if threshold is None else threshold
    return _strassen(a, b, p, t)


def rref(a, p):
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    m = np.array(a, np.int64) % p
    rows, cols = m.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.flatnonzero(m[row:, col])
        if not nz.size:
            continue
        piv = row + nz[0]
        if piv != row:
            m[[row, piv]] = m[[piv, row]]
        m[row] = m[row] * pow(int(m[row, col]), -1, p) % p
        factors = m[:, col].copy()
        factors[row] = 0
        m = (m - np.outer(factors, m[row])) % p
        pivots.append(col)
        row += 1
    return m, pivots


def rank(a, p):
    return len(rref(a, p)[1])


def mat_inv(a, p):
    a = np.asarray(a, np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    red, piv = rref(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return red[:, n:]


def mat_solve(a, b, p):
    """Solve a x = b over F_p. Returns one solution; free variables set to zero."""
    a = np.asarray(a, np.int64)
    b = np.asarray(b, np.int64)
    vec = b.ndim == 1
    bb = b[:, None] if vec else b
    red, piv = rref(np.concatenate([a, bb], axis=1), p)
    ncols = a.shape[1]
    if any(c >= ncols for c in piv):
        raise InconsistentSystemError("system has no solution")
    x = np.zeros((ncols, bb.shape[1]), np.int64)
    for row, col in enumerate(piv):
        x[col] = red[row, ncols:]
    return x[:, 0] if vec else x


# -- matrices over F_{p^n}


def ext_mat_mul(a, b, field):
    """Product of matrices with entries in ``field`` (trailing coordinate axis)."""
    p, n = field.p, field.n
    if n == 1:
        return mat_mul(a[..., 0], b[..., 0], p)[..., None]
    rows, inner = a.shape[:2]
    cols = b.shape[1]
    flat_b = b.reshape(inner, cols * n)
    parts = np.stack([matmul_mod(a[:, :, i], flat_b, p).reshape(rows, cols, n) for i in range(n)], axis=-2)
    return field.reduce(antidiagonal_sum(parts) % p)


def ext_mat_inv(a, field):
    """Inverse of a square matrix over ``field`` by Gauss-Jordan elimination."""
    p, n = field.p, field.n
    if n == 1:
        return mat_inv(a[..., 0], p)[..., None]
    size = a.shape[0]
    eye = np.zeros((size, size, n), np.int64)
    eye[np.arange(size), np.arange(size), 0] = 1
    m = np.concatenate([np.array(a, np.int64) % p, eye], axis=1)
    for col in range(size):
        nz = [i for i in range(col, size) if m[i, col].any()]
        if not nz:
            raise SingularMatrixError("matrix is singular")
        if nz[0] != col:
            m[[col, nz[0]]] = m[[nz[0], col]]
        m[col] = field.mul(field.inv(m[col, col])[None], m[col])
        factors = m[:, col].copy()
        factors[col] = 0
        m = field.sub(m, field.mul(factors[:, None, :], m[col][None]))
    return m[:, size:]
