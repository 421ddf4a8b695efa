"""Exact integer kernels shared by every arithmetic layer.

All arrays hold residues in ``[0, p)`` as ``int64``. Accumulating operations
fall back to Python-object arithmetic when an int64 sum could overflow.
"""

import numpy as np

_INT64_LIMIT = 1 << 62


def fits_int64(p, terms):
    return (p - 1) * (p - 1) * max(terms, 1) < _INT64_LIMIT


def matmul_mod(a, b, p):
    """``(a @ b) % p`` without overflow."""
    k = a.shape[-1]
    if fits_int64(p, k):
        return np.matmul(a, b) % p
    out = np.matmul(a.astype(object), b.astype(object)) % p
    return out.astype(np.int64)


def _pack(flat, width):
    raw = np.ascontiguousarray(flat, dtype="<u8").view(np.uint8).reshape(-1, 8)
    if width <= 8:
        return int.from_bytes(raw[:, :width].tobytes(), "little")
    buf = np.zeros((flat.size, width), np.uint8)
    buf[:, :8] = raw
    return int.from_bytes(buf.tobytes(), "little")


def conv(a, b, p):
    """Exact multidimensional convolution of two residue arrays, reduced mod p.

    Uses Kronecker substitution: both operands are packed into big integers
    with slots wide enough that no carry crosses a slot boundary, multiplied
    once, and unpacked. Axes of length one broadcast (scalar-polynomial
    products along that axis).
    """
    if a.ndim != b.ndim:
        raise ValueError("operands must have the same number of axes")
    if a.size == 0 or b.size == 0:
        shape = tuple(max(x + y - 1, 0) for x, y in zip(a.shape, b.shape))
        return np.zeros(shape, np.int64)
    out_shape = tuple(x + y - 1 for x, y in zip(a.shape, b.shape))
    inner = out_shape[1:]
    if inner != a.shape[1:]:
        pa = np.zeros((a.shape[0],) + inner, np.int64)
        pa[tuple(slice(0, s) for s in a.shape)] = a
    else:
        pa = a
    if inner != b.shape[1:]:
        pb = np.zeros((b.shape[0],) + inner, np.int64)
        pb[tuple(slice(0, s) for s in b.shape)] = b
    else:
        pb = b
    terms = min(a.size, b.size)
    bits = 2 * (p - 1).bit_length() + terms.bit_length() + 1
    width = (bits + 7) // 8
    fa = pa.ravel()
    fb = pb.ravel()
    prod = _pack(fa, width) * _pack(fb, width)
    n_out = 1
    for s in out_shape:
        n_out *= s
    raw = np.frombuffer(prod.to_bytes((fa.size + fb.size) * width, "little"), np.uint8)
    raw = raw[: n_out * width].reshape(n_out, width)
    if width <= 8:
        buf = np.zeros((n_out, 8), np.uint8)
        buf[:, :width] = raw
        vals = (buf.view("<u8").ravel() % np.uint64(p)).astype(np.int64)
    else:
        weights = np.array([pow(256, k, p) for k in range(width)], dtype=np.int64)
        vals = matmul_mod(raw.astype(np.int64), weights, p)
    return vals.reshape(out_shape)


def antidiagonal_sum(t):
    """Collapse the last two axes (i, j) of ``t`` into one axis indexed by i + j."""
    *lead, m, k = t.shape
    z = np.zeros(tuple(lead) + (m, m + k), t.dtype)
    z[..., :k] = t
    flat = z.reshape(tuple(lead) + (m * (m + k),))[..., : m * (m + k - 1)]
    return flat.reshape(tuple(lead) + (m, m + k - 1)).sum(axis=-2)
