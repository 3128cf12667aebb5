"""Exact computation of the Wick-type star product on the 2-sphere S^2_lambda."""

from .errors import MathError, ParseError, S2StarError
from .expr import parse_expr
from .orbit import FreePoly, InvariantPoly, SpherePoly, embed, reduce_sphere, to_ABC
from .scalars import GaussRat, Scalar, parse_scalar, scalar_poles
from .star import StarConfig, commutator, formal_expand, poisson, product_poles, star
from .uea import DEFAULT_LAMBDA, EnvElement, GroupElement, pairing, project0, twist

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LAMBDA",
    "EnvElement",
    "FreePoly",
    "GaussRat",
    "GroupElement",
    "InvariantPoly",
    "MathError",
    "ParseError",
    "S2StarError",
    "Scalar",
    "SpherePoly",
    "StarConfig",
    "commutator",
    "embed",
    "formal_expand",
    "pairing",
    "parse_expr",
    "parse_scalar",
    "poisson",
    "product_poles",
    "project0",
    "reduce_sphere",
    "scalar_poles",
    "star",
    "to_ABC",
    "twist",
]
