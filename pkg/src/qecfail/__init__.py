"""Exact failure probabilities of qubit stabilizer codes.

Codes are additive self-orthogonal codes over GF(4). From the classical code
we compute weight enumerators, detection and correction fidelities, small-p
failure coefficients and code rankings; :mod:`qecfail.oracle` rechecks these
with dense matrices and Monte Carlo sampling.
"""

from __future__ import annotations

from .codes import (
    CATALOG_NAMES,
    AdditiveCode,
    CapExceeded,
    CodeError,
    CodeParameters,
    catalog,
    direct_sum,
    load_code,
    parameters,
    parse_code,
)
from .gf4 import GF4, GF4Vector, trace_inner_product

__all__ = [
    "CATALOG_NAMES",
    "GF4",
    "AdditiveCode",
    "CapExceeded",
    "CodeError",
    "CodeParameters",
    "GF4Vector",
    "catalog",
    "direct_sum",
    "load_code",
    "parameters",
    "parse_code",
    "trace_inner_product",
]

__version__ = "0.1.0"
