"""Exact verification of the strong Lefschetz property for coinvariant rings."""
from __future__ import annotations

from .scalar import QQ, FieldDescriptor, Scalar, field_create, format_scalar, parse_scalar, sign
from .rootsystem import RootSystem, ThetaSubset, build_root_system, parse_type
from .quotient import QuotientPoset, enumerate_quotient

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "FieldDescriptor",
    "Scalar",
    "field_create",
    "format_scalar",
    "parse_scalar",
    "sign",
    "RootSystem",
    "ThetaSubset",
    "build_root_system",
    "parse_type",
    "QuotientPoset",
    "enumerate_quotient",
]
