"""Entanglement-assisted quantum codes from algebraic-geometry codes."""

from agquenta.agcode import evaluation_code
from agquenta.bounds import delta_grid, family_curve, gv_compare, ihara_a
from agquenta.errors import ConstraintViolation, PropositionFalsified
from agquenta.funcfield import (Divisor, EllipticCurve, HermitianCurve,
                                RationalCurve)
from agquenta.galois import GF, Field
from agquenta.lincode import LinearCode
from agquenta.quenta import (QuentaParams, ag_euclidean, elliptic_family,
                             euclidean_construct, hermitian_construct,
                             hermitian_construction_rational,
                             hermitian_curve_family, qsb, rational_family)

__all__ = [
    "GF",
    "Field",
    "LinearCode",
    "Divisor",
    "RationalCurve",
    "HermitianCurve",
    "EllipticCurve",
    "evaluation_code",
    "QuentaParams",
    "qsb",
    "euclidean_construct",
    "hermitian_construct",
    "ag_euclidean",
    "rational_family",
    "hermitian_curve_family",
    "elliptic_family",
    "hermitian_construction_rational",
    "ihara_a",
    "delta_grid",
    "family_curve",
    "gv_compare",
    "ConstraintViolation",
    "PropositionFalsified",
]
