"""Exact arithmetic: integers, polynomials, finite fields, p-adic roots, lattices."""

from .finite_field import FFDesc, FFPoly, Factorization, factor_mod_p
from .lattice import DegenerateBasisError, IntLatticeBasis, algdep_reconstruct, lll_reduce
from .padic import NotSeparableError, PadicRing, PadicRootSet, hensel_lift_roots
from .poly import IntPoly, RatPoly

__all__ = [
    "FFDesc", "FFPoly", "Factorization", "factor_mod_p",
    "DegenerateBasisError", "IntLatticeBasis", "algdep_reconstruct", "lll_reduce",
    "NotSeparableError", "PadicRing", "PadicRootSet", "hensel_lift_roots",
    "IntPoly", "RatPoly",
]
