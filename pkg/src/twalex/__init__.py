"""Exact twisted Alexander invariants of knot group presentations."""

from .group_algebra import GroupRingElement, Word, exponent_sum, fox_derivative
from .invariants import (
    InvariantReport,
    TwistedMatrix,
    alexander_polynomial,
    build_twisted,
    cyclic_det_via_products,
    delete_column,
    det_laurent,
    phi,
    wada,
)
from .laurent import (
    LaurentPolynomial,
    RationalFunction,
    bar,
    doteq,
    g_of_f,
    is_reciprocal,
    resultant,
    unit_normalize,
)
from .presentations import Presentation, builtin, is_wirtinger, parse
from .representations import (
    DualVerdict,
    MatrixRep,
    RationalMatrix,
    companion_matrix,
    conj_to_dual_witness,
    cyclic_rep,
    dual,
    is_symplectic,
    verify,
)

__version__ = "0.1.0"
