"""Exact toolkit for comparing the algebra generated by inner-derivation
tensors with the joint kernel of the two multiplication maps."""

from .algebra import (
    FinAlg,
    diagonal_algebra,
    matrix_algebra,
    poly_quotient,
    tensor_square_op,
)
from .derivations import decide_L_property, nlie_subspace, semiideal_verify, tlie_subspace
from .errors import DerivkitError, DimensionMismatch, InternalError, ParseError, PreconditionError
from .linalg import Matrix, Subspace

__version__ = "0.1.0"
