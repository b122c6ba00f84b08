"""Exact verification, construction and finite-field search for curved O-operator systems."""
from .coeff import Field, ParseError, Poly, Ring, RingMismatch, parse_poly
from .multilinear import BilMap, LinMap, ShapeError, Space, TriTensor, tensor_space
from .structures import Equation, HypothesisError, Report, Verdict

__version__ = "0.1.0"

__all__ = [
    "Field", "Ring", "Poly", "ParseError", "RingMismatch", "parse_poly",
    "Space", "LinMap", "BilMap", "TriTensor", "ShapeError", "tensor_space",
    "Report", "Equation", "Verdict", "HypothesisError",
]
