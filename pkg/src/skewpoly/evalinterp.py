"""Evaluation and interpolation of skew polynomials on a normal basis.

With B(T) = sum b_i T^i the values A(b_0), ..., A(b_{r-1}) are the coefficients
of A~(T) B(T) mod T^r - 1, where A~ is A read as a commutative polynomial.
Interpolation on a prefix b_0..b_{n-1} is done by steering a linear
combination of the Euclidean remainders of (T^r - 1, B) onto prescribed top
coefficients, with a divide-and-conquer scheme in the style of half-gcd.
"""

from __future__ import annotations

import numpy as np

from . import polys
from .fields import NotInvertibleError
from .linalg import InconsistentSystemError, mat_solve
from .skew import SkewPoly, reduce_cyclic

STEER_THRESHOLD = 8


def _base_poly(ring, c):
    """T^r - c as a polynomial over the base field (c None means 1)."""
    base = ring.base
    m = base.zeros((ring.r + 1,))
    m[ring.r] = base.one()
    m[0] = base.neg(base.one() if c is None else np.asarray(c))
    return m


def inverse_mod_binomial(ring, u, c=None):
    """Inverse of u(T) modulo T^r - c, c central.

    sigma acting on coefficients is an automorphism of L[T]/(T^r - c) of order
    r, so the product of the r conjugates of u has base-field coefficients and
    can be inverted with a plain extended Euclid over the base field. This
    never divides by a tower element, so it is safe when the tower has zero
    divisors.
    """
    r = ring.r
    u = polys.fold(ring, u, r, c)

    def mulmod(a, b):
        return polys.fold(ring, polys.mul(ring, a, b), r, c)

    # prod_{k<m} sigma^k(u) by binary splitting
    def conj_product(m):
        if m == 1:
            return u
        half = conj_product(m // 2)
        out = mulmod(half, ring.frob(half, m // 2))
        if m % 2:
            out = mulmod(out, ring.frob(u, m - 1))
        return out

    rest = ring.frob(conj_product(r - 1), 1) if r > 1 else polys.pad(ring.one()[None], r)
    nrm = mulmod(u, rest)
    if nrm[:, 1:, :].any():
        raise ArithmeticError("conjugate product is not central")
    try:
        nrm_inv = polys.scalar_inverse_mod(ring.base, polys.trim(nrm[:, 0, :]), _base_poly(ring, c))
    except (ArithmeticError, ZeroDivisionError) as exc:
        raise NotInvertibleError("polynomial is not invertible modulo T^r - c") from exc
    return mulmod(rest, ring.from_base(nrm_inv))


class NormalBasisContext:
    """Precomputed data for evaluation and interpolation on the normal basis."""

    def __init__(self, ring):
        self.ring = ring
        self.r = ring.r
        self.B = ring.normal_basis
        self.B_inverse_mod = inverse_mod_binomial(ring, self.B)
        self._remainders = None

    @classmethod
    def of(cls, ring):
        ctx = ring._cache.get("nbctx")
        if ctx is None:
            ctx = ring._cache["nbctx"] = cls(ring)
        return ctx

    def shifted(self, n):
        """B_n(T) = sum_i b_{i+n} T^i."""
        return np.roll(self.B, -n, axis=0)

    def remainder_table(self):
        if self._remainders is None:
            self._remainders = remainder_sequence(self.ring, _cyclic_modulus(self.ring), self.B)
        return self._remainders


def _cyclic_modulus(ring):
    m = ring.zeros((ring.r + 1,))
    m[ring.r] = ring.one()
    m[0] = ring.neg(ring.one())
    return m


def remainder_sequence(ring, r0, r1):
    """Classical Euclidean remainder sequence [R_0, R_1, ..., last nonzero]."""
    seq = [polys.trim(r0), polys.trim(r1)]
    while len(seq[-1]):
        seq.append(polys.divmod_(ring, seq[-2], seq[-1])[1])
    return seq[:-1]


def eval_on_normal_basis(a, ctx=None):
    """(A(b_0), ..., A(b_{r-1})) as an array (r, r, n)."""
    ring = a.ring
    ctx = ctx or NormalBasisContext.of(ring)
    at = reduce_cyclic(a).coeffs
    return polys.fold(ring, polys.mul(ring, at, ctx.B), ring.r)


def interpolate_full(values, ring, ctx=None):
    """The unique A of degree < r with A(b_j) = values[j]."""
    ctx = ctx or NormalBasisContext.of(ring)
    values = np.asarray(values, np.int64)
    if len(values) != ring.r:
        raise ValueError(f"expected {ring.r} values")
    return SkewPoly(ring, polys.fold(ring, polys.mul(ring, values, ctx.B_inverse_mod), ring.r))


def eval_truncated(a, n, ctx=None):
    """(A(b_0), ..., A(b_{n-1})) for deg A <= n <= r using two short products.

    With j + j' = i or i + r covering every term of A(b_i), the first range
    comes from A~ * (b_0 + ... + b_{n-1} T^{n-1}) and the second from
    A~ * (b_{r-n} + ... + b_{r-1} T^{n-1}) read at position i + n. Reading the
    plain products (no wrap-around) keeps the two ranges disjoint for all n.
    """
    ring = a.ring
    r = ring.r
    if not 0 <= n <= r:
        raise ValueError("need 0 <= n <= r")
    if a.degree > n:
        raise ValueError("degree of A exceeds n")
    ctx = ctx or NormalBasisContext.of(ring)
    if n == 0:
        return ring.zeros((0,))
    if a.is_zero():
        return ring.zeros((n,))
    low = polys.mul(ring, a.coeffs, ctx.B[:n])
    high = polys.mul(ring, a.coeffs, ctx.B[r - n :])
    out = polys.pad(low, n) + polys.pad(high[n:], n)
    return out % ring.p


# -- steering on the remainder sequence


def _pmat_apply(ring, m, v0, v1):
    return (
        polys.add(ring, polys.mul(ring, m[0][0], v0), polys.mul(ring, m[0][1], v1)),
        polys.add(ring, polys.mul(ring, m[1][0], v0), polys.mul(ring, m[1][1], v1)),
    )


def _pmat_mul(ring, a, b):
    return [
        [
            polys.add(ring, polys.mul(ring, a[i][0], b[0][j]), polys.mul(ring, a[i][1], b[1][j]))
            for j in range(2)
        ]
        for i in range(2)
    ]


def _steer_classical(ring, p0, p1, rho, m):
    """Iterative steering: one remainder step per eliminated position."""
    D = len(p0) - 1
    one = ring.one()[None]
    empty = ring.zeros((0,))
    mat = [[one, empty], [empty, one]]
    w = [empty, empty]
    a, b = p0, p1
    rho = polys.pad(rho, D).copy()
    for i in range(1, m + 1):
        pos = D - i
        if len(b) != pos + 1:
            raise ArithmeticError("remainder sequence is not normal")
        if rho[pos].any():
            c = ring.div(rho[pos], b[pos])
            rho[: pos + 1] = ring.sub(rho[: pos + 1], ring.mul(c[None], b))
            w = [polys.add(ring, w[k], polys.scale(ring, c, mat[1][k])) for k in range(2)]
        q, rem = polys.divmod_(ring, a, b)
        a, b = b, rem
        mat = [mat[1], [polys.sub(ring, mat[0][k], polys.mul(ring, q, mat[1][k])) for k in range(2)]]
    return mat, w


def steer(ring, p0, p1, rho, m, threshold=None):
    """Steer a combination of the remainders onto the top coefficients of rho.

    Given p0 of degree D and p1 of degree D - 1 whose remainder sequence is
    normal for m steps, returns (M, w) where M maps (p0, p1) to (P_m, P_{m+1})
    and w = (w0, w1) makes rho - w0 p0 - w1 p1 vanish at every position
    >= D - m. Both are computed from the top 2m + 1 coefficients only.
    """
    if threshold is None:
        threshold = STEER_THRESHOLD
    D = len(p0) - 1
    s = max(0, D - 2 * m - 1)
    if s:
        p0, p1, rho = p0[s:], p1[s:], polys.trim(rho[s:])
        D -= s
    if m <= threshold:
        return _steer_classical(ring, p0, p1, rho, m)
    h = m // 2
    m1, w1 = steer(ring, p0, p1, rho, h, threshold)
    ph, ph1 = _pmat_apply(ring, m1, p0, p1)
    combo = polys.add(ring, polys.mul(ring, w1[0], p0), polys.mul(ring, w1[1], p1))
    rho1 = polys.trim(polys.pad(polys.sub(ring, rho, combo), D - h))
    m2, w2 = steer(ring, ph, ph1, rho1, m - h, threshold)
    mat = _pmat_mul(ring, m2, m1)
    w = [
        polys.add(
            ring,
            w1[k],
            polys.add(ring, polys.mul(ring, w2[0], m1[0][k]), polys.mul(ring, w2[1], m1[1][k])),
        )
        for k in range(2)
    ]
    return mat, w


def _steer_any(ring, p0, p1, rho, m, classical):
    if classical:
        return _steer_classical(ring, p0, p1, rho, m)
    return steer(ring, p0, p1, rho, m)


def min_subspace_poly_truncated(n, ring, ctx=None, classical=False):
    """Monic A of degree n vanishing on b_0, ..., b_{n-1}."""
    ctx = ctx or NormalBasisContext.of(ring)
    r = ring.r
    if not 1 <= n <= r:
        raise ValueError("need 1 <= n <= r")
    r0 = _cyclic_modulus(ring)
    mat, _ = _steer_any(ring, r0, polys.trim(ctx.shifted(n)), ring.zeros((0,)), n, classical)
    v = polys.trim(mat[1][1])
    return SkewPoly(ring, v).monic()


def small_degree_interpolation(alphas, n, ring, ctx=None, classical=False):
    """A of degree < n with A(b_i) = alphas[i] for i < n (1 <= n <= r).

    A~ B_n + U (T^r - 1) must equal sum alpha_i T^{r-n+i} on every position
    >= r - n; the unique solution with deg A~ < n, deg U < n - 1 is the
    steering row after n remainder steps of (T^r - 1, B_n).
    """
    ctx = ctx or NormalBasisContext.of(ring)
    r = ring.r
    alphas = np.asarray(alphas, np.int64)
    if not 1 <= n <= r or len(alphas) != n:
        raise ValueError("need 1 <= n <= r and n values")
    target = polys.shift(alphas, r - n)
    r1 = polys.trim(ctx.shifted(n))
    _, w = _steer_any(ring, _cyclic_modulus(ring), r1, target, n, classical)
    return SkewPoly(ring, w[1])


def interpolation_certificate(alphas, n, ring, ctx=None, classical=False):
    """(U, V, H) with U (T^r - 1) + V B = H + T^{r-n+1} (alpha_0 + ... + alpha_{n-1} T^{n-1}).

    Degrees satisfy deg U <= n - 1, deg V <= n, deg H <= r - n. Returned as
    commutative polynomial arrays.
    """
    ctx = ctx or NormalBasisContext.of(ring)
    r = ring.r
    alphas = np.asarray(alphas, np.int64)
    target = polys.trim(polys.shift(alphas, r - n + 1))
    r0 = _cyclic_modulus(ring)
    q0 = ring.zeros((0,))
    rho = target
    if len(target) == r + 1:
        q0 = target[r][None]
        rho = polys.sub(ring, target, polys.scale(ring, target[r], r0))
    _, w = _steer_any(ring, r0, polys.trim(ctx.B), rho, n - 1, classical)
    u = polys.add(ring, q0, w[0])
    v = w[1]
    lhs = polys.add(ring, polys.mul(ring, u, r0), polys.mul(ring, v, ctx.B))
    h = polys.sub(ring, lhs, target)
    return u, v, h


def interpolate_linear_oracle(points, m, ring):
    """Least-degree A (deg <= m) with A(x_i) = y_i by dense linear algebra over F_p."""
    if ring.n != 1:
        raise ValueError("the linear oracle works over the base tower only")
    xs = np.asarray([np.asarray(x, np.int64) for x, _ in points])
    ys = np.asarray([np.asarray(y, np.int64) for _, y in points])
    r, p = ring.r, ring.p
    if len(points) > m + 1 or m + 1 > r:
        raise ValueError("need #points <= m + 1 <= r")
    eye = np.eye(r, dtype=np.int64)[:, :, None]
    sig = ring.frob_all(xs)  # (r, k, r, 1)
    rhs = ys[..., 0].reshape(-1)
    last = None
    for deg in range(m + 1):
        blocks = []
        for j in range(deg + 1):
            # column block j: multiplication by sigma^j(x_i), stacked over points
            prods = ring.mul(sig[j % r][:, None], eye[None])  # (k, r_basis, r, 1)
            blocks.append(np.concatenate([np.swapaxes(pr[..., 0], 0, 1) for pr in prods], axis=0))
        mat = np.concatenate(blocks, axis=1)
        try:
            sol = mat_solve(mat, rhs, p)
        except InconsistentSystemError as exc:
            last = exc
            continue
        return SkewPoly(ring, sol.reshape(deg + 1, r)[..., None])
    raise InconsistentSystemError("no interpolant of degree <= m") from last
