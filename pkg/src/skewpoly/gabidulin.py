"""Generalized Gabidulin codes: evaluation encoding and rank-error decoding.

Decoding interpolates the received word, then runs the right remainder
sequence of (M, R), M the minimal subspace polynomial of the evaluation
points, until the remainder degree drops below k + t_max. At that point
R_i = U M + V R with V an error locator and R_i = V f, so the message is the
left quotient of R_i by V.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import arith
from .linalg import rank
from .skew import SkewPoly, ldiv_naive


@dataclass(frozen=True)
class DecodingFailure:
    reason: str

    def __bool__(self):
        return False


class GabidulinCode:
    """Evaluation code of skew polynomials of degree < k at n independent points."""

    def __init__(self, ring, points, k):
        pts = np.asarray(points, np.int64).reshape((-1,) + ring.shape)
        n = len(pts)
        if not 1 <= k <= n <= ring.r:
            raise ValueError(f"need 1 <= k <= n <= r, got k={k}, n={n}, r={ring.r}")
        self.ring = ring
        self.points = pts
        self.points.flags.writeable = False
        self.n = n
        self.k = k
        self.t_max = (n - k) // 2
        self.interpolator = arith.Interpolator(pts, ring)  # raises on dependent points
        self.vanishing = self.interpolator.poly

    @classmethod
    def power_points(cls, ring, n, k):
        """Code evaluated at 1, x, ..., x^{n-1}."""
        if not 1 <= n <= ring.r:
            raise ValueError(f"need 1 <= n <= r, got n={n}, r={ring.r}")
        pts = ring.zeros((n,))
        for i in range(n):
            pts[i, i, 0] = 1
        return cls(ring, pts, k)

    def encode(self, msg):
        if not msg.is_zero() and msg.degree >= self.k:
            raise ValueError(f"message degree {msg.degree} is not below k={self.k}")
        if msg.is_zero():
            return self.ring.zeros((self.n,))
        return arith.multieval(msg, self.points)

    def error_rank(self, error):
        """Rank over the base field of the n x r coordinate matrix of an error vector."""
        e = np.asarray(error, np.int64).reshape(self.n, -1)
        return rank(e, self.ring.p)

    def decode(self, received):
        """The message within rank distance t_max of ``received``, or a DecodingFailure."""
        ring = self.ring
        y = np.asarray(received, np.int64).reshape((self.n,) + ring.shape) % ring.p
        interp = self.interpolator(y)
        bound = self.k + self.t_max
        rem, _, locator = arith.rgcd_bounded(self.vanishing, interp, bound)
        if locator.is_zero():
            return DecodingFailure("no error locator")
        msg, leftover = ldiv_naive(rem, locator)
        if not leftover.is_zero():
            return DecodingFailure("locator does not divide the remainder")
        if not msg.is_zero() and msg.degree >= self.k:
            return DecodingFailure("message degree too large")
        if self.error_rank(ring.sub(y, self.encode(msg))) > self.t_max:
            return DecodingFailure("error rank exceeds the correction radius")
        return msg


def random_rank_error(ring, n, t, rng):
    """Error vector of rank exactly t: a random rank-t n x t by t x r product over F_p."""
    p = ring.p
    if t == 0:
        return ring.zeros((n,))
    while True:
        left = rng.integers(0, p, size=(n, t))
        right = rng.integers(0, p, size=(t, ring.r * ring.n))
        e = (left @ right) % p
        if rank(e, p) == t:
            return e.reshape((n,) + ring.shape)


def plant_and_recover(code, t, trials, rng):
    """Decode random codewords hit by rank-t errors.

    Returns counts: ``recovered`` (the sent message), ``failure`` (reported),
    ``nearby`` (another codeword within t_max of the received word, only
    possible beyond the radius) and ``wrong`` (anything else: a silent error).
    """
    counts = dict(recovered=0, failure=0, nearby=0, wrong=0)
    ring = code.ring
    for _ in range(trials):
        msg = SkewPoly(ring, ring.random(rng, (code.k,)))
        received = ring.add(code.encode(msg), random_rank_error(ring, code.n, t, rng))
        out = code.decode(received)
        if isinstance(out, DecodingFailure):
            counts["failure"] += 1
        elif out == msg:
            counts["recovered"] += 1
        elif code.error_rank(ring.sub(received, code.encode(out))) <= code.t_max:
            counts["nearby"] += 1
        else:
            counts["wrong"] += 1
    return counts
