"""Fast division, gcd, lcm, multipoint evaluation and interpolation.

Every routine is built on a pluggable multiplication ``mul(A, B)``; the
default switches from schoolbook to CRT multiplication at the crossover
measured by the bench harness.
"""

from __future__ import annotations

import numpy as np

from .fastmult import multiply
from .evalinterp import NormalBasisContext, eval_on_normal_basis
from .linalg import ext_mat_mul
from .skew import SkewPoly, rdiv_naive

# total degree above which CRT multiplication overtakes schoolbook here
MUL_CROSSOVER = 256
DIV_THRESHOLD = 16
GCD_THRESHOLD = 16


def default_mul(a, b):
    return multiply(a, b, naive_threshold=MUL_CROSSOVER)


def _mul(mul):
    return mul if mul is not None else default_mul


def _quo_shift(a, s):
    """A quo X^s on the right: drop the s lowest coefficients."""
    return SkewPoly(a.ring, a.coeffs[s:]) if s > 0 else a


def _frob_poly(a, k):
    """Apply sigma^k to every coefficient."""
    if a.is_zero() or k % a.ring.r == 0:
        return a
    return SkewPoly(a.ring, a.ring.frob(a.coeffs, k % a.ring.r))


# -- division


def rquo_fast(a, b, mul=None, threshold=None):
    """Right quotient Q of A = Q B + R by divide and conquer."""
    mul = _mul(mul)
    threshold = DIV_THRESHOLD if threshold is None else threshold
    ring = a.ring
    if b.is_zero():
        raise ZeroDivisionError("division by the zero skew polynomial")
    if a.is_zero() or a.degree < b.degree:
        return SkewPoly.zero(ring)
    k = int(a.degree - b.degree)
    s = int(b.degree) - k
    if s > 0:
        # only the top 2k+1 (resp. k+1) coefficients influence the quotient
        a, b = _quo_shift(a, s), _quo_shift(b, s)
    if k <= threshold:
        return rdiv_naive(a, b)[0]
    h = (k + 1) // 2
    q_hi = rquo_fast(_quo_shift(a, h), _frob_poly(b, h), mul, threshold)
    # Q_hi X^h B = Q_hi sigma^h(B) X^h
    a2 = a - mul(q_hi, _frob_poly(b, h)).shift(h)
    q_lo = rquo_fast(a2, b, mul, threshold)
    return q_hi.shift(h) + q_lo


def rdiv_fast(a, b, mul=None, threshold=None):
    """Right division A = Q B + R with deg R < deg B."""
    a._check(b)
    q = rquo_fast(a, b, mul, threshold)
    return q, a - _mul(mul)(q, b)


# -- 2x2 matrices acting on the left of column vectors


def _identity(ring):
    one, zero = SkewPoly.one(ring), SkewPoly.zero(ring)
    return [[one, zero], [zero, one]]


def _mat_mul(m2, m1, mul):
    return [[mul(m2[i][0], m1[0][j]) + mul(m2[i][1], m1[1][j]) for j in range(2)] for i in range(2)]


def _mat_apply(m, a, b, mul):
    return mul(m[0][0], a) + mul(m[0][1], b), mul(m[1][0], a) + mul(m[1][1], b)


def _step_matrix(q):
    ring = q.ring
    return [[SkewPoly.zero(ring), SkewPoly.one(ring)], [SkewPoly.one(ring), -q]]


def _naive_steps(a, b, stop, mul):
    """Euclidean steps while deg B >= stop; returns the matrix and final pair."""
    ring = a.ring
    m = _identity(ring)
    while not b.is_zero() and b.degree >= stop:
        q, rem = rdiv_naive(a, b)
        a, b = b, rem
        # [[0,1],[1,-q]] m
        m = [m[1], [m[0][0] - mul(q, m[1][0]), m[0][1] - mul(q, m[1][1])]]
    return m, a, b


def hgcd(a, b, mul=None, threshold=None):
    """Matrix M with (C, D) = M (A, B), deg C >= ceil(deg A / 2) > deg D.

    Requires deg A > deg B. M is the product of the Euclidean step matrices
    of the right remainder sequence of A and B.
    """
    mul = _mul(mul)
    threshold = GCD_THRESHOLD if threshold is None else threshold
    ring = a.ring
    n = int(a.degree)
    m = (n + 1) // 2
    if b.is_zero() or b.degree < m:
        return _identity(ring)
    if n <= threshold:
        return _naive_steps(a, b, m, mul)[0]
    r = hgcd(_quo_shift(a, m), _quo_shift(b, m), mul, threshold)
    a1, b1 = _mat_apply(r, a, b, mul)
    if b1.is_zero() or b1.degree < m:
        return r
    q, d1 = rdiv_fast(a1, b1, mul)
    c1 = b1
    mat = _mat_mul(_step_matrix(q), r, mul)
    if d1.is_zero() or d1.degree < m:
        return mat
    k = 2 * m - int(c1.degree)
    s = hgcd(_quo_shift(c1, k), _quo_shift(d1, k), mul, threshold)
    return _mat_mul(s, mat, mul)


def _remainder_run(a, b, stop, mul, threshold):
    """Remainder pair (R_i, R_{i+1}) with deg R_{i+1} < stop <= deg R_i, and its matrix.

    stop = 0 runs the sequence until the second entry is zero.
    """
    ring = a.ring
    m = _identity(ring)
    if a.degree < b.degree:
        a, b = b, a
        m = [m[1], m[0]]
    while not b.is_zero() and b.degree >= stop:
        if a.degree <= threshold:
            step, a, b = _naive_steps(a, b, stop, mul)
            m = _mat_mul(step, m, mul)
            break
        if a.degree == b.degree:
            step = _step_matrix(rdiv_fast(a, b, mul)[0])
        else:
            s = 2 * stop - int(a.degree)
            if s > 0:
                step = hgcd(_quo_shift(a, s), _quo_shift(b, s), mul, threshold)
            else:
                step = hgcd(a, b, mul, threshold)
            if step[0][1].is_zero() and step[1][0].is_zero():
                step = _step_matrix(rdiv_fast(a, b, mul)[0])
        a, b = _mat_apply(step, a, b, mul)
        m = _mat_mul(step, m, mul)
    return m, a, b


def rgcd_fast(a, b, mul=None, threshold=None):
    """Monic right gcd G with left cofactors G = U A + V B."""
    mul = _mul(mul)
    threshold = GCD_THRESHOLD if threshold is None else threshold
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    m, g, _ = _remainder_run(a, b, 0, mul, threshold)
    inv = a.ring.inv(g.lc)
    return g.scale_left(inv), m[0][0].scale_left(inv), m[0][1].scale_left(inv)


def llcm_fast(a, b, mul=None, threshold=None):
    """Monic least left common multiple S A = T B."""
    mul = _mul(mul)
    threshold = GCD_THRESHOLD if threshold is None else threshold
    a._check(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm with the zero polynomial is undefined")
    m, _, _ = _remainder_run(a, b, 0, mul, threshold)
    return mul(m[1][0], a).monic()


def rgcd_bounded(a, b, bound, mul=None, threshold=None):
    """First remainder R_i = U A + V B of the right remainder sequence with deg R_i < bound.

    Returns (R_i, U, V).
    """
    mul = _mul(mul)
    threshold = GCD_THRESHOLD if threshold is None else threshold
    a._check(b)
    if not a.is_zero() and a.degree < bound and a.degree >= b.degree:
        return a, SkewPoly.one(a.ring), SkewPoly.zero(a.ring)
    m, _, r = _remainder_run(a, b, max(int(bound), 0), mul, threshold)
    return r, m[1][0], m[1][1]


# -- evaluation and interpolation at many points


def linear_factor(x, ring):
    """X - sigma(x)/x, the monic degree-one polynomial vanishing at x != 0."""
    x = np.asarray(x, np.int64)
    c = ring.mul(ring.frob(x, 1), ring.inv(x))
    return SkewPoly(ring, np.stack([ring.neg(c), ring.one()]))


def eval_rem_linear(a, x):
    """A(x) = x * (A rem (X - sigma(x)/x)) for x != 0."""
    ring = a.ring
    x = np.asarray(x, np.int64)
    if not x.any():
        raise ValueError("evaluation point must be nonzero")
    rem = rdiv_naive(a, linear_factor(x, ring))[1]
    return ring.mul(rem.coeff(0), x)


class SubspaceTree:
    """Balanced tree of minimal subspace polynomials over a list of points."""

    def __init__(self, points, ring, mul=None, threshold=None):
        self.ring = ring
        self.points = np.asarray(points, np.int64).reshape((-1,) + ring.shape)
        self.mul = _mul(mul)
        self.threshold = threshold
        self.root = self._build(0, len(self.points))

    def _build(self, lo, hi):
        if hi - lo == 1:
            x = self.points[lo]
            if not x.any():
                raise ValueError("zero point in the family")
            return (lo, hi, linear_factor(x, self.ring), None, None)
        mid = (lo + hi) // 2
        left, right = self._build(lo, mid), self._build(mid, hi)
        poly = llcm_fast(left[2], right[2], self.mul, self.threshold)
        if poly.degree != hi - lo:
            raise ValueError(f"points {lo}..{hi - 1} are linearly dependent: "
                             f"subspace polynomial has degree {poly.degree} < {hi - lo}")
        return (lo, hi, poly, left, right)

    @property
    def poly(self):
        return self.root[2]


def min_subspace_poly(points, ring, mul=None, threshold=None):
    """Monic M of degree d vanishing exactly on the span of d independent points."""
    return SubspaceTree(points, ring, mul, threshold).poly


def _multieval_tree(a, node, mul, out):
    lo, hi, poly, left, right = node
    if a.degree >= poly.degree:
        a = rdiv_fast(a, poly, mul)[1]
    if left is None:
        out[lo] = a.coeff(0)
        return
    _multieval_tree(a, left, mul, out)
    _multieval_tree(a, right, mul, out)


def multieval_tree(a, points, tree=None, mul=None):
    """A at every point via remainders down a subspace tree."""
    ring = a.ring
    pts = np.asarray(points, np.int64).reshape((-1,) + ring.shape)
    tree = tree or SubspaceTree(pts, ring, mul)
    rems = ring.zeros((len(pts),))
    _multieval_tree(a, tree.root, tree.mul, rems)
    return ring.mul(rems, pts)


def multieval_operator(a, points, ctx=None):
    """A at every point through the operator matrix of A mod X^r - 1."""
    ring = a.ring
    pts = np.asarray(points, np.int64).reshape((-1,) + ring.shape)
    if a.is_zero():
        return np.zeros_like(pts)
    ctx = ctx or NormalBasisContext.of(ring)
    # columns: images of the normal basis, then change to power coordinates
    op = ext_mat_mul(np.moveaxis(eval_on_normal_basis(a, ctx), 0, 1), ring.omega, ring.base)
    vals = ext_mat_mul(op, np.moveaxis(pts, 0, 1), ring.base)
    return np.moveaxis(vals, 1, 0)


def multieval(a, points, strategy="auto", mul=None):
    """A(x_1), ..., A(x_m) at nonzero points; strategy is 'tree', 'operator' or 'auto'.

    'auto' takes the operator matrix when the point count is comparable to r
    (or A already wraps around X^r) and the remainder tree otherwise.
    """
    ring = a.ring
    pts = np.asarray(points, np.int64).reshape((-1,) + ring.shape)
    if not pts.reshape(len(pts), -1).any(axis=1).all():
        raise ValueError("multievaluation points must be nonzero")
    if strategy == "auto":
        wide = 2 * len(pts) >= ring.r or a.degree >= ring.r
        strategy = "operator" if ring.n == 1 and wide else "tree"
    if strategy == "operator":
        return multieval_operator(a, pts)
    if strategy == "tree":
        return multieval_tree(a, pts, mul=mul)
    raise ValueError(f"unknown strategy {strategy!r}")


class Interpolator:
    """Precomputed data for interpolation at a fixed free family of points.

    Newton-style splitting: P = P1 + W M1 where P1 interpolates the first
    half, M1 vanishes on the first half, and W interpolates the corrected
    second half at the images M1(x_i). Everything but P1 and W depends on the
    points only, so it is built once.
    """

    def __init__(self, points, ring, mul=None, node=None):
        self.ring = ring
        self.mul = _mul(mul)
        pts = np.asarray(points, np.int64).reshape((-1,) + ring.shape)
        if len(pts) > ring.r:
            raise ValueError("more points than the dimension of the field")
        self.points = pts
        self.d = len(pts)
        if self.d == 0:
            return
        if node is None:
            node = SubspaceTree(pts, ring, self.mul).root  # raises on dependent points
        self.poly = node[2]
        if self.d == 1:
            self.inv_point = ring.inv(pts[0])
            return
        left = node[3]
        mid = left[1] - left[0]
        self.mid = mid
        self.left = Interpolator(pts[:mid], ring, self.mul, left)
        self.rest = pts[mid:]
        self.right = Interpolator(multieval(self.left.poly, self.rest, mul=self.mul), ring, self.mul)

    def __call__(self, values):
        ring = self.ring
        vals = np.asarray(values, np.int64).reshape((-1,) + ring.shape)
        if len(vals) != self.d:
            raise ValueError("points and values differ in length")
        if self.d == 0:
            return SkewPoly.zero(ring)
        if self.d == 1:
            return SkewPoly.constant(ring, ring.mul(vals[0], self.inv_point))
        p1 = self.left(vals[: self.mid])
        done = multieval(p1, self.rest, mul=self.mul) if not p1.is_zero() else 0 * self.rest
        w = self.right(ring.sub(vals[self.mid :], done))
        return p1 + self.mul(w, self.left.poly)


def interpolate_general(points, values, ring, mul=None):
    """Unique P of degree < d with P(x_i) = y_i for d independent points."""
    return Interpolator(points, ring, mul)(values)
