"""Salem numbers, quaternion constructions and dynamical degrees of torus automorphisms."""
from . import errors
from ._kernels import BACKEND as KERNEL_BACKEND
from .number_field import (
    NumberField,
    PowerOrder,
    element_norm,
    element_trace,
    embedding_signature,
    field_kind,
    is_prime_ideal_pO,
    min_poly_over_Q,
    power_basis_discriminant,
    quadratic_splitting,
)
from .salem import classify_root_moduli, is_pisot, is_salem, salem_certificate, salem_value, trace_polynomial

__version__ = "0.1.0"
SCHEMA_VERSION = "1.0"

__all__ = [
    "KERNEL_BACKEND",
    "NumberField",
    "PowerOrder",
    "SCHEMA_VERSION",
    "classify_root_moduli",
    "element_norm",
    "element_trace",
    "embedding_signature",
    "errors",
    "field_kind",
    "is_pisot",
    "is_prime_ideal_pO",
    "is_salem",
    "min_poly_over_Q",
    "power_basis_discriminant",
    "quadratic_splitting",
    "salem_certificate",
    "salem_value",
    "trace_polynomial",
]
