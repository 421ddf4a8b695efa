"""Skew multiplication modulo central polynomials X^r - 1, X^r - a and Z(X^r).

Modulo X^r - 1 the product is a composition of operators on L, realized as a
matrix triple product between two commutative products with B(T). Modulo
X^r - a the same works with a basis twisted by lambda, where N(lambda) = a.
Modulo Z(X^r), Z irreducible over F_p, the problem is moved to X^r - a over
the scalar extension K' = F_p[y]/(Z) where a is a root of Z.
"""

from __future__ import annotations

import numpy as np

from . import fp, polys
from .evalinterp import NormalBasisContext, inverse_mod_binomial
from .fields import NotInvertibleError
from .linalg import SingularMatrixError, ext_mat_inv, ext_mat_mul, mat_inv
from .skew import SkewPoly, reduce_cyclic


class ModulusError(ValueError):
    """The sampled norm does not generate the scalar extension."""


def _product_core(ring, a1, a2, basis_poly, basis_inv, to_basis, c):
    """A1 A2 mod X^r - c given reduced coefficient arrays.

    basis_poly is sum e_i T^i for a basis with (lambda sigma)(e_{i+1}) = e_i,
    basis_inv its inverse mod T^r - c and to_basis the working->basis change
    of coordinates.
    """
    r = ring.r
    c1 = polys.fold(ring, polys.mul(ring, a1, basis_poly), r, c)
    c2 = polys.fold(ring, polys.mul(ring, a2, basis_poly), r, c)
    m1 = np.moveaxis(c1, 0, 1)
    m2 = np.moveaxis(c2, 0, 1)
    m = ext_mat_mul(ext_mat_mul(m1, to_basis, ring.base), m2, ring.base)
    prod = np.moveaxis(m, 1, 0)
    return polys.fold(ring, polys.mul(ring, prod, basis_inv), r, c)


def mod_mul_cyclic(a1, a2, ctx=None):
    """A1 A2 mod X^r - 1 through one product of r x r matrices."""
    ring = a1.ring
    a1._check(a2)
    ctx = ctx or NormalBasisContext.of(ring)
    if a1.is_zero() or a2.is_zero():
        return SkewPoly.zero(ring)
    x1 = reduce_cyclic(a1).coeffs
    x2 = reduce_cyclic(a2).coeffs
    return SkewPoly(ring, _product_core(ring, x1, x2, ctx.B, ctx.B_inverse_mod, ring.omega, None))


def twist_substitute(a, lam):
    """A(lambda X) = sum lambda_i a_i X^i with lambda_i = lambda sigma(lambda) ... sigma^{i-1}(lambda)."""
    ring = a.ring
    lam = np.asarray(lam, np.int64)
    if not lam.any():
        raise ValueError("twist by zero")
    if a.is_zero():
        return a
    lams = ring.partial_norms(lam, len(a.coeffs))
    return SkewPoly(ring, ring.mul(a.coeffs, lams))


class TwistedBasisContext:
    """Basis adapted to the twisted operator lambda sigma.

    The basis satisfies e_{r-1} = v and e_{i-1} = lambda sigma(e_i), hence
    (lambda sigma)(e_0) = a e_{r-1} with a = N(lambda). The seed v is b_{r-1}
    when that orbit is free (then e_i = lambda_{r-1-i} b_i); otherwise seeds are
    drawn from ``rng`` until the orbit is a basis. One always exists because
    lambda sigma has minimal polynomial T^r - a.
    """

    SEED_ATTEMPTS = 64

    def __init__(self, ring, lam, rng=None, norm=None):
        self.ring = ring
        self.lam = np.asarray(lam, np.int64)
        self.a = ring.norm(self.lam) if norm is None else norm
        if not self.a.any():
            raise NotInvertibleError("lambda is not a unit")
        seed = ring.normal_basis[ring.r - 1]
        for _ in range(self.SEED_ATTEMPTS):
            basis = self._orbit(seed)
            try:
                self.P_inv = ext_mat_inv(ring.coords_matrix(basis), ring.base)
                break
            except SingularMatrixError:
                if rng is None:
                    rng = np.random.default_rng(0)
                seed = ring.random(rng)
        else:
            raise NotInvertibleError("no cyclic vector found for the twisted operator")
        self.twisted_basis = basis
        self.B = basis
        self.P_mat = ring.coords_matrix(basis)
        self.B_inverse = inverse_mod_binomial(ring, basis, self.a)

    def _orbit(self, seed):
        ring, r = self.ring, self.ring.r
        basis = ring.zeros((r,))
        basis[r - 1] = seed
        for i in range(r - 1, 0, -1):
            basis[i - 1] = ring.mul(self.lam, ring.frob(basis[i], 1))
        return basis

    def twisted_operator(self, v):
        """(lambda sigma)(v)."""
        return self.ring.mul(self.lam, self.ring.frob(v, 1))


def reduce_binomial(a, c):
    """A mod X^r - c for a central base-field value c."""
    return reduce_cyclic(a, c)


def mod_mul_a(a1, a2, ctx):
    """A1 A2 mod X^r - a where a = N(lambda) of the context."""
    ring = a1.ring
    a1._check(a2)
    if a1.is_zero() or a2.is_zero():
        return SkewPoly.zero(ring)
    x1 = reduce_cyclic(a1, ctx.a).coeffs
    x2 = reduce_cyclic(a2, ctx.a).coeffs
    return SkewPoly(ring, _product_core(ring, x1, x2, ctx.B, ctx.B_inverse, ctx.P_inv, ctx.a))


# -- central moduli Z(X^r)


class ExtensionContext:
    """Everything needed to multiply modulo Z(X^r) with Z the minimal polynomial of N(lambda')."""

    def __init__(self, lift, lam, rng=None):
        self.lift = lift
        self.n = lift.n
        kp = lift.base
        self.lam = np.asarray(lam, np.int64)
        self.a = lift.norm(self.lam)
        if not self.a.any():
            raise ModulusError("zero norm")
        self.Z = kp.min_poly(self.a)
        if len(self.Z) - 1 != self.n:
            raise ModulusError("norm does not generate the scalar extension")
        self.twisted = TwistedBasisContext(lift, self.lam, rng, self.a)
        # powers a^0..a^{n-1}: used to push strands forward; inverse pulls back
        pw = [kp.one()]
        for _ in range(max(self.n - 1, 0)):
            pw.append(kp.mul(pw[-1], self.a))
        self.powers = np.stack(pw)  # (n, n): row k = y-coordinates of a^k
        self.pull = mat_inv(self.powers.T, lift.p)  # y-coords -> a-power coords

    def push(self, a):
        """Map A over L (reduced mod Z(X^r)) to the lifted tower with X^r -> a."""
        lift, r, n, p = self.lift, self.lift.r, self.n, self.lift.p
        strands = split_strands(a.coeffs[..., 0], r, n)  # (n, r_j, r_c)
        m = len(strands)
        apw = self.powers[:m] if m <= n else _power_table(lift.base, self.a, m)
        out = np.einsum("mjc,mk->jck", strands, apw) % p
        return out

    def pull_back(self, gamma):
        """Coefficients (r_j, r_c, n) over L' -> strands (n, r_j, r_c) over F_p."""
        return np.einsum("kl,jcl->kjc", self.pull, gamma) % self.lift.p

    def multiply_strands(self, a1, a2):
        g1 = self.push(a1)
        g2 = self.push(a2)
        tw = self.twisted
        prod = _product_core(self.lift, g1, g2, tw.B, tw.B_inverse, tw.P_inv, self.a)
        return self.pull_back(prod)


def _power_table(field, a, count):
    pw = [field.one()]
    for _ in range(count - 1):
        pw.append(field.mul(pw[-1], a))
    return np.stack(pw)


def split_strands(coeffs, r, min_len=0):
    """Coefficients (len, ...) -> strands (m, r, ...) with index i = m r + j."""
    m = max(-(-len(coeffs) // r), min_len)
    out = np.zeros((m * r,) + coeffs.shape[1:], np.int64)
    out[: len(coeffs)] = coeffs
    return out.reshape((m, r) + coeffs.shape[1:])


def join_strands(strands, ring):
    """Inverse of :func:`split_strands` into a SkewPoly over the base tower."""
    m, r = strands.shape[:2]
    return SkewPoly(ring, strands.reshape((m * r,) + strands.shape[2:])[..., None])


def reduce_central(a, z):
    """A mod Z(X^r) for Z over F_p (monic), acting strand by strand."""
    ring = a.ring
    strands = split_strands(a.coeffs[..., 0], ring.r)
    red = fp.rem_batched(strands, z, ring.p)
    return join_strands(red, ring)


def mod_mul_Z(a1, a2, lam, lift, ctx=None):
    """A1 A2 mod Z(X^r) where Z is the minimal polynomial of N(lambda') over F_p.

    Raises :class:`ModulusError` when N(lambda') does not generate K'.
    """
    ring = a1.ring
    a1._check(a2)
    ctx = ctx or ExtensionContext(lift, lam)
    if a1.is_zero() or a2.is_zero():
        return SkewPoly.zero(ring)
    z = ctx.Z
    r1 = reduce_central(a1, z)
    r2 = reduce_central(a2, z)
    return join_strands(ctx.multiply_strands(r1, r2), ring)
