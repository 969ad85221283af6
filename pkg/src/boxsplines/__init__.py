"""Box splines with parameters, Todd-operator deconvolution and partition functions."""

from .arrangement import Alcove, alcove_of, first_crossing, generic_direction, is_generic, is_regular, limit_point, walls
from .boxspline import eval, eval_exact, eval_translated, local_exppoly, local_polynomial
from .core import (
    DirectionList,
    LatticeFunction,
    ParameterList,
    Representation,
    tangent_cone_contains,
    validate,
    zonotope_contains,
)
from .deconv import deconvolve, deconvolve_translated, dm_quasipolynomial, p_s, reconstruct_from_alcove, semidiscrete
from .errors import *  # noqa: F401,F403
from .partition import (
    Chamber,
    chamber_of,
    multispline_eval,
    partition_count,
    partition_trace,
    partition_via_todd,
)
from .series import OperatorPoly, apply_operator, bernoulli, beta_coeffs, todd_operator, truncation_order
from .torus import TorusPoint, character, phi_s, vertex_set

__version__ = "0.1.0"
