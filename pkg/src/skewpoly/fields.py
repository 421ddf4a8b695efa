"""Finite fields F_p, F_{p^n} and the extension towers L = K[x]/(f) used by the
skew polynomial ring.

Elements are numpy ``int64`` arrays of residues. A base field element of
``GF(p, g)`` has shape ``(..., n)``; an element of an :class:`ExtField` has shape
``(..., r, n)`` where axis ``-2`` indexes powers of ``x`` and axis ``-1`` indexes
powers of the base-field generator ``y`` (``n == 1`` for the plain tower over
``F_p``). Leading axes are batch axes and every operation broadcasts over them.
"""

from __future__ import annotations

import numpy as np

from ._kernels import antidiagonal_sum, matmul_mod
from . import fp


class FieldError(ValueError):
    pass


class NotInvertibleError(ArithmeticError):
    pass


def check_prime(p):
    p = int(p)
    if p < 2:
        raise FieldError(f"{p} is not prime")
    if p < 1 << 20:
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise FieldError(f"{p} is not prime")
            d += 1
        return p
    # deterministic Miller-Rabin for 64-bit inputs
    if p >= 1 << 31:
        raise FieldError("p must fit in 31 bits")
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            raise FieldError(f"{p} is not prime")
    return p


def _reduction_rows(modulus, p, count):
    """Rows k = 0..count-1 hold the coordinates of t^k mod ``modulus`` (monic)."""
    m = np.asarray(modulus, np.int64)
    deg = len(m) - 1
    rows = np.zeros((max(count, deg), deg), np.int64)
    cur = np.zeros(deg, np.int64)
    cur[0] = 1
    for k in range(max(count, deg)):
        rows[k] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1]))
        cur = (cur - top * m[:-1]) % p
    return rows[:count]


INVERSE_TABLE_LIMIT = 1 << 16


class GF:
    """The field F_p, or F_{p^n} = F_p[y]/(g) when a modulus ``g`` is given."""

    def __init__(self, p, modulus=None, check=True):
        self.p = check_prime(p) if check else int(p)
        if modulus is None:
            modulus = (0, 1)
        modulus = tuple(int(c) % self.p for c in modulus)
        if modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        self.modulus = modulus
        self.n = len(modulus) - 1
        if self.n < 1:
            raise FieldError("modulus must have positive degree")
        if check and self.n > 1 and not fp.is_irreducible(modulus, self.p):
            raise FieldError("modulus is not irreducible")
        self.shape = (self.n,)
        self.order = self.p**self.n
        self._rows = _reduction_rows(modulus, self.p, 2 * self.n - 1)

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}, {list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- construction
    def zeros(self, lead=()):
        return np.zeros(tuple(lead) + self.shape, np.int64)

    def one(self):
        e = self.zeros()
        e[0] = 1
        return e

    def gen(self):
        e = self.zeros()
        if self.n > 1:
            e[1] = 1
        else:
            e[0] = 0
        return e

    def from_int(self, c):
        e = self.zeros()
        e[0] = int(c) % self.p
        return e

    def random(self, rng, lead=()):
        return rng.integers(0, self.p, size=tuple(lead) + self.shape, dtype=np.int64)

    def is_zero(self, a):
        return not np.any(a)

    # -- arithmetic
    def reduce(self, c):
        """Reduce a polynomial in y of length ``<= 2n - 1`` along the last axis."""
        m = c.shape[-1]
        if self.n == 1:
            return c[..., :1] % self.p
        return matmul_mod(c % self.p, self._rows[:m], self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        t = (a[..., :, None] * b[..., None, :]) % self.p
        return self.reduce(antidiagonal_sum(t))

    def pow(self, a, e):
        result = np.broadcast_to(self.one(), a.shape).copy()
        base = a.copy()
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def _encode(self, a):
        weights = self.p ** np.arange(self.n, dtype=np.int64)
        return a @ weights

    def _inverse_table(self):
        table = getattr(self, "_inv_table", None)
        if table is None:
            idx = np.arange(self.order, dtype=np.int64)
            elems = (idx[:, None] // self.p ** np.arange(self.n, dtype=np.int64)) % self.p
            inv = self.pow(elems, self.order - 2)
            table = self._encode(inv)
            self._inv_table = table
        return table

    def inv(self, a):
        a = np.asarray(a, np.int64)
        if self.n == 1:
            if np.any(a % self.p == 0):
                raise ZeroDivisionError("inverse of zero")
            flat = a.reshape(-1)
            out = np.array([pow(int(v), -1, self.p) for v in flat], np.int64)
            return out.reshape(a.shape)
        if np.any(~a.any(axis=-1)):
            raise ZeroDivisionError("inverse of zero")
        if self.order <= INVERSE_TABLE_LIMIT:
            code = self._inverse_table()[self._encode(a)]
            return (code[..., None] // self.p ** np.arange(self.n, dtype=np.int64)) % self.p
        return self.pow(a, self.order - 2)

    def matrix_of(self, a):
        """Matrix (n x n over F_p) of multiplication by ``a``; columns are images of y^j."""
        cols = np.stack([self.mul(a, e) for e in np.eye(self.n, dtype=np.int64)], axis=-1)
        return cols

    def min_poly(self, a):
        """Monic minimal polynomial of ``a`` over F_p, as an int array (constant first)."""
        powers = [self.one()]
        for _ in range(self.n):
            powers.append(self.mul(powers[-1], a))
        from .linalg import rref

        mat = np.stack(powers, axis=1)
        red, pivots = rref(mat, self.p)
        m = next(j for j in range(self.n + 1) if j not in pivots)
        z = np.zeros(m + 1, np.int64)
        z[m] = 1
        for row, col in enumerate(pivots):
            if col < m:
                z[col] = (-red[row, m]) % self.p
        return z

    def format(self, a):
        return "[" + ",".join(str(int(v)) for v in np.asarray(a).reshape(-1)) + "]"


class ExtField:
    """The ring ``K[x]/(f)`` with Frobenius ``x -> x^p`` of order ``r``.

    Over ``K = F_p`` (the default) this is the field L = F_{p^r}. When ``base``
    is a larger field F_{p^n} the same construction gives L' = K' (x) L, which
    may have zero divisors; use :meth:`lift` to build it.

    Parameters
    ----------
    p : int
        Characteristic.
    f : sequence of int
        Monic modulus of degree r, constant term first.
    rng : numpy Generator, optional
        Source of randomness for the normal basis search.
    normal_basis : array, optional
        Use this (r, r) normal basis instead of searching for one.
    """

    def __init__(self, p, f, rng=None, normal_basis=None, base=None, check=True,
                 _parent=None):
        self.base = base if base is not None else GF(p, check=check)
        self.p = self.base.p
        self.f = tuple(int(c) % self.p for c in f)
        if self.f[-1] != 1:
            raise FieldError("modulus f must be monic")
        self.r = len(self.f) - 1
        if self.r < 1:
            raise FieldError("modulus f must have positive degree")
        self.n = self.base.n
        self.shape = (self.r, self.n)
        self.parent = _parent
        self._rx = _reduction_rows(self.f, self.p, 2 * self.r - 1)
        self._cache = {}
        self._lifts = {}
        if _parent is not None:
            self.frobenius_matrix = _parent.frobenius_matrix
            self._frob_pows = _parent._frob_pows
        else:
            if check and self.r > 1 and not fp.is_irreducible(self.f, self.p):
                raise FieldError("modulus f is not irreducible over F_p")
            self.frobenius_matrix = self._frobenius_matrix()
            self._frob_pows = self._matrix_powers(self.frobenius_matrix)
            if check:
                self._check_order()
        if _parent is not None:
            nb = self.embed(_parent.normal_basis)
        elif normal_basis is not None:
            nb = np.asarray(normal_basis, np.int64).reshape(self.r, self.r, 1) % self.p
            self._check_normal_basis(nb)
        else:
            nb = self._find_normal_basis(rng if rng is not None else np.random.default_rng(0))
        self.normal_basis = nb
        self.normal_basis.setflags(write=False)
        self.omega_inv = self.coords_matrix(nb)
        if _parent is not None:
            self.omega = self.embed_matrix(_parent.omega)
        else:
            from .linalg import mat_inv

            self.omega = mat_inv(self.omega_inv[..., 0], self.p)[..., None]

    @classmethod
    def from_string(cls, text, rng=None):
        """Parse ``p=<prime>;f=c0,c1,...,cr``."""
        from .io import parse_field

        p, f = parse_field(text)
        return cls(p, f, rng=rng)

    def describe(self):
        return f"p={self.p};f=" + ",".join(str(c) for c in self.f)

    def __repr__(self):
        if self.n == 1:
            return f"ExtField({self.describe()})"
        return f"ExtField({self.describe()}; base={self.base!r})"

    # -- construction helpers
    def _frobenius_matrix(self):
        if self.r == 1:
            return np.ones((1, 1), np.int64)
        xp = fp.powmod(np.array([0, 1], np.int64), self.p, np.array(self.f), self.p)
        cols = [np.zeros(self.r, np.int64)]
        cols[0][0] = 1
        for _ in range(1, self.r):
            cols.append(fp.mulmod(cols[-1], xp, np.array(self.f), self.p))
        return np.stack([fp.pad(c, self.r) for c in cols], axis=1)

    def _matrix_powers(self, m):
        pows = [np.eye(self.r, dtype=np.int64)]
        for _ in range(1, self.r):
            pows.append(matmul_mod(m, pows[-1], self.p))
        return np.stack(pows)

    def _check_order(self):
        full = matmul_mod(self.frobenius_matrix, self._frob_pows[-1], self.p)
        if not np.array_equal(full, np.eye(self.r, dtype=np.int64)):
            raise FieldError("Frobenius does not have order r")
        for s in range(1, self.r):
            if self.r % s == 0 and np.array_equal(self._frob_pows[s], np.eye(self.r, dtype=np.int64)):
                raise FieldError("Frobenius has order smaller than r")

    def _check_normal_basis(self, nb):
        from .linalg import rank

        shifted = self.frob(np.roll(nb, -1, axis=0), 1)
        if not np.array_equal(shifted, nb):
            raise FieldError("normal basis relation fails")
        if rank(self.coords_matrix(nb)[..., 0], self.p) != self.r:
            raise FieldError("normal basis is not linearly independent")

    def _basis_from(self, top):
        # b_i = sigma^{r-1-i}(b_{r-1})
        return np.stack([self.frob(top, self.r - 1 - i) for i in range(self.r)])

    def basis_from_seed(self, seed):
        """(b_0, ..., b_{r-1}) with b_{r-1} = seed; raises FieldError when dependent."""
        from .linalg import rank

        nb = self._basis_from(np.asarray(seed, np.int64).reshape(self.shape))
        if rank(self.coords_matrix(nb).reshape(self.r, -1), self.p) != self.r:
            raise FieldError("the orbit of the seed is linearly dependent")
        return nb

    def _find_normal_basis(self, rng):
        from .linalg import rank

        def ok(top):
            nb = self._basis_from(top)
            return nb if rank(self.coords_matrix(nb)[..., 0], self.p) == self.r else None

        for _ in range(64 * self.r):
            nb = ok(self.random(rng))
            if nb is not None:
                return nb
        if self.p**self.r <= 4096:
            for k in range(1, self.p**self.r):
                digits = np.array([(k // self.p**i) % self.p for i in range(self.r)], np.int64)
                nb = ok(digits[:, None])
                if nb is not None:
                    return nb
        raise FieldError("normal basis search exceeded its retry cap")

    def lift(self, n, rng=None):
        """The tower L' = F_{p^n} (x) L, built once per ``n`` and cached."""
        if self.parent is not None:
            raise FieldError("lift a base tower, not a lifted one")
        if n not in self._lifts:
            if n == 1:
                base = self.base
            else:
                g = fp.random_irreducible(n, self.p, rng if rng is not None else np.random.default_rng(n))
                base = GF(self.p, g, check=False)
            self._lifts[n] = ExtField(self.p, self.f, base=base, check=False, _parent=self)
        return self._lifts[n]

    # -- element helpers
    def zeros(self, lead=()):
        return np.zeros(tuple(lead) + self.shape, np.int64)

    def one(self):
        e = self.zeros()
        e[0, 0] = 1
        return e

    def x(self):
        e = self.zeros()
        if self.r > 1:
            e[1, 0] = 1
        else:
            e[0, 0] = (-self.f[0]) % self.p
        return e

    def from_base(self, c):
        """Inject base-field values of shape (..., n) as constants."""
        c = np.asarray(c, np.int64)
        out = np.zeros(c.shape[:-1] + self.shape, np.int64)
        out[..., 0, :] = c
        return out

    def elem(self, coords):
        """Element from power-basis coordinates (length r, entries in F_p or K')."""
        a = np.asarray(coords, np.int64) % self.p
        if a.ndim == 1:
            a = a[:, None]
        if a.shape != self.shape:
            raise FieldError(f"expected {self.r} coordinates")
        return a

    def random(self, rng, lead=()):
        return rng.integers(0, self.p, size=tuple(lead) + self.shape, dtype=np.int64)

    def random_unit(self, rng, lead=()):
        while True:
            a = self.random(rng, lead)
            if self.n == 1:
                if np.all(a.reshape(a.shape[: a.ndim - 2] + (-1,)).any(axis=-1)):
                    return a
            else:
                try:
                    self.inv(a)
                    return a
                except NotInvertibleError:
                    pass

    def is_zero(self, a):
        return not np.any(a)

    def embed(self, a):
        """Embed elements of the parent tower (n = 1) into this one."""
        a = np.asarray(a, np.int64)
        out = np.zeros(a.shape[:-1] + (self.n,), np.int64)
        out[..., 0] = a[..., 0]
        return out

    def embed_matrix(self, m):
        out = np.zeros(m.shape[:-1] + (self.n,), np.int64)
        out[..., 0] = m[..., 0]
        return out

    def coords_matrix(self, elems):
        """Stack elements (m, r, n) as the columns of an (r, m, n) matrix."""
        return np.moveaxis(np.asarray(elems), 0, 1)

    # -- arithmetic
    def reduce(self, c):
        """Reduce a product array (..., sx, sy) with sx <= 2r-1, sy <= 2n-1."""
        sx = c.shape[-2]
        t = np.swapaxes(c % self.p, -1, -2)
        t = matmul_mod(t, self._rx[:sx], self.p)
        t = np.swapaxes(t, -1, -2)
        return self.base.reduce(t)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        p = self.p
        if self.n == 1:
            t = (a[..., :, None, 0] * b[..., None, :, 0]) % p
            s = antidiagonal_sum(t) % p
            return matmul_mod(s, self._rx[: s.shape[-1]], p)[..., None]
        t = (a[..., :, None, :, None] * b[..., None, :, None, :]) % p
        t = np.moveaxis(t, (-4, -3), (-2, -1))
        t = antidiagonal_sum(t) % p
        t = np.moveaxis(t, -1, -3)
        t = antidiagonal_sum(t) % p
        return self.reduce(t)

    def scale(self, c, a):
        """Multiply elements ``a`` by base-field values ``c`` (shape (..., n))."""
        return self.base.mul(np.asarray(c)[..., None, :], a)

    def frob(self, a, k=1):
        """sigma^k applied to every element of ``a``."""
        k %= self.r
        if k == 0:
            return np.array(a, np.int64, copy=True)
        return matmul_mod(self._frob_pows[k], a, self.p)

    def frob_all(self, a):
        """Array (r, ...) whose entry s is sigma^s(a)."""
        return np.stack([self.frob(a, s) for s in range(self.r)])

    def norm(self, a):
        """N(a) = a sigma(a) ... sigma^{r-1}(a) as a base-field value (..., n)."""
        lam = a
        for _ in range(self.r - 1):
            lam = self.mul(a, self.frob(lam, 1))
        return lam[..., 0, :]

    def partial_norms(self, a, count):
        """lambda_0 = 1, lambda_{i+1} = a sigma(lambda_i) for i < count."""
        out = [np.broadcast_to(self.one(), a.shape).copy()]
        for _ in range(count - 1):
            out.append(self.mul(a, self.frob(out[-1], 1)))
        return np.stack(out)

    def inv(self, a):
        """Inverse via u^{-1} = sigma(u)...sigma^{r-1}(u) / N(u).

        Raises :class:`NotInvertibleError` when N(u) = 0, which in a lifted
        tower happens exactly for zero divisors.
        """
        rest = np.broadcast_to(self.one(), a.shape).copy()
        for s in range(1, self.r):
            rest = self.mul(rest, self.frob(a, s))
        nrm = self.mul(a, rest)[..., 0, :]
        if np.any(~nrm.any(axis=-1)):
            raise NotInvertibleError("element is not invertible")
        return self.scale(self.base.inv(nrm), rest)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a):
        a = np.asarray(a)
        if self.n == 1:
            return "[" + ",".join(str(int(v)) for v in a[:, 0]) + "]"
        return "[" + ",".join(self.base.format(v) for v in a) + "]"


def tower(p, f, seed=0):
    """Convenience constructor with a seeded normal-basis search."""
    return ExtField(p, f, rng=np.random.default_rng(seed))


def default_modulus(p, r, seed=0):
    """A deterministic irreducible modulus of degree r over F_p."""
    if r == 1:
        return (0, 1)
    return tuple(int(c) for c in fp.first_irreducible(r, p))
