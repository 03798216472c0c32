"""Exact transmutation, reflective algebras and braided module checks for finite Hopf algebras."""

from .scalar import FieldCtx, Scalar, format_scalar, parse_scalar, zeta_power
from .tensor import MultilinearMap, Space, TypeMismatch, compose, maps_equal, tensor
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "Scalar",
    "format_scalar",
    "parse_scalar",
    "zeta_power",
    "MultilinearMap",
    "Space",
    "TypeMismatch",
    "compose",
    "maps_equal",
    "tensor",
    "Report",
]
