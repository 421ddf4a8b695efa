"""Skew polynomials over finite fields with fast multiplication."""

from .fields import GF, ExtField, FieldError, NotInvertibleError, default_modulus, tower
from .skew import SkewPoly, skew_mul_naive, skew_eval, rdiv_naive, ldiv_naive, rgcd_naive, llcm_naive, operator_matrix
from .evalinterp import (
    NormalBasisContext,
    eval_on_normal_basis,
    eval_truncated,
    interpolate_full,
    interpolation_certificate,
    min_subspace_poly_truncated,
    small_degree_interpolation,
)
from .modmult import ExtensionContext, TwistedBasisContext, mod_mul_a, mod_mul_cyclic, mod_mul_Z
from .fastmult import SamplingError, mult_crt, mult_small_degree, multiply, sample_moduli
from .arith import (
    eval_rem_linear,
    interpolate_general,
    llcm_fast,
    min_subspace_poly,
    multieval,
    rdiv_fast,
    rgcd_bounded,
    rgcd_fast,
)
from .gabidulin import DecodingFailure, GabidulinCode

__version__ = "0.1.0"
