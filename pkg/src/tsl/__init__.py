"""Exact arithmetic for positive definite ternary quadratic forms."""

from .forms import (
    BinaryForm,
    NotPositiveDefinite,
    NotPrimitive,
    TernaryForm,
    direct_sum_one,
    discriminant4,
    make_form,
)

__all__ = [
    "BinaryForm",
    "NotPositiveDefinite",
    "NotPrimitive",
    "TernaryForm",
    "direct_sum_one",
    "discriminant4",
    "make_form",
]

__version__ = "0.1.0"
