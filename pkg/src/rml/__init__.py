"""Exact computations and theorem checks for linear rank-metric codes."""

from __future__ import annotations

from .errors import (
    BudgetExceeded,
    FieldMismatch,
    InapplicableDefinition,
    InvalidDistribution,
    NotIrreducible,
    RmlError,
)
from .fields import GF, ExtField, FieldBasis, PrimeField, orthogonal_basis
from .kernels import BACKEND
from .linalg import Subspace, all_subspaces
from .matrix_codes import (
    MatrixCode,
    are_equivalent,
    classify,
    dual,
    max_rank,
    min_distance,
    weight_distribution,
)
from .vector_codes import VectorCode, expand, v_equivalent, vclassify, vdual

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "ExtField",
    "FieldBasis",
    "FieldMismatch",
    "GF",
    "InapplicableDefinition",
    "InvalidDistribution",
    "MatrixCode",
    "NotIrreducible",
    "PrimeField",
    "RmlError",
    "Subspace",
    "VectorCode",
    "all_subspaces",
    "are_equivalent",
    "classify",
    "dual",
    "expand",
    "max_rank",
    "min_distance",
    "orthogonal_basis",
    "v_equivalent",
    "vclassify",
    "vdual",
    "weight_distribution",
]
