"""Homology and homotopy of rack and quandle spaces for finite quandles."""

from .abelian import AbelianGroupClass
from .chains import ChainComplex, build_complex, homology
from .quandle import FiniteQuandle, alexander, quandle_from_spec

__all__ = ["AbelianGroupClass", "ChainComplex", "FiniteQuandle", "alexander",
           "build_complex", "homology", "quandle_from_spec"]
__version__ = "0.1.0"
