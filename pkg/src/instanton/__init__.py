"""Instanton numbers of plane curve germs, computed exactly over Q."""

from .invariants import (
    InstantonInputError,
    InstantonInternalError,
    InstantonResult,
    charge,
    compute,
    instanton_height,
    instanton_width,
    milnor,
    multiplicity,
    tjurina,
)
from .parse import PolySyntaxError, parse_poly
from .polycore import DEFAULT, STRICT, BiPoly

__version__ = "0.1.0"
