"""Spectra, dynamical degrees and diagram classification."""
from .degrees import (
    DynamicalProfile,
    LambdaValue,
    Reducibility,
    count_fixed_points,
    dynamical_degrees,
    hyperbolicity,
    lambda_vectors,
    reducibility_criterion,
)
from .diagrams import (
    DIAGRAMS,
    TABLES,
    DiagramResult,
    TableRow,
    classify_diagram,
    classify_profile,
    real_multiplication_lambda1_is_pisot,
    table_rows,
)
from .moduli import ModuliEngine, products_polynomial
from .spectrum import (
    Block,
    EndoDescriptor,
    Spectrum,
    field_descriptor,
    quaternion_descriptor,
    spectrum_from_descriptor,
    spectrum_from_field_endo,
    spectrum_from_quaternion_endo,
)

__all__ = [
    "Block",
    "DIAGRAMS",
    "DiagramResult",
    "DynamicalProfile",
    "EndoDescriptor",
    "LambdaValue",
    "ModuliEngine",
    "Reducibility",
    "Spectrum",
    "TABLES",
    "TableRow",
    "classify_diagram",
    "classify_profile",
    "count_fixed_points",
    "dynamical_degrees",
    "field_descriptor",
    "hyperbolicity",
    "lambda_vectors",
    "products_polynomial",
    "quaternion_descriptor",
    "real_multiplication_lambda1_is_pisot",
    "reducibility_criterion",
    "spectrum_from_descriptor",
    "spectrum_from_field_endo",
    "spectrum_from_quaternion_endo",
    "table_rows",
]
