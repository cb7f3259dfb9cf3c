"""Exact symbolic verification of Bernstein-Sato data for maximal minors
and sub-maximal Pfaffians: Weyl-algebra operators, Capelli elements,
b-function catalogs, and topological zeta functions, all over Q."""

from .exact import (
    ExactScalar,
    FactoredPolynomial,
    MultiPoly,
    RationalFunction,
    UniPoly,
    VarId,
    factor_linear,
    interpolate,
    poly_arith,
    poly_subst,
    rational,
    var,
)
from .weyl import (
    SpaceDescriptor,
    VariableMismatch,
    WeylAlgebra,
    WeylElement,
    commutator,
    fourier,
    weyl_apply,
    weyl_mul,
)

__version__ = "0.1.0"
