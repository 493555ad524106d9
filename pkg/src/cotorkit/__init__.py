"""Cotor of comodule algebras over GF(2) and the Toda structure on classifying-space models."""

from .catalog import model
from .cotor import CotorTable, cotor_cobar, cotor_twisted
from .hopf import ComoduleAlgebra, HopfDescriptor, Report
from .poly import BiDegree, Poly, PolyAlgebra

__version__ = "0.1.0"

__all__ = [
    "BiDegree",
    "ComoduleAlgebra",
    "CotorTable",
    "HopfDescriptor",
    "Poly",
    "PolyAlgebra",
    "Report",
    "cotor_cobar",
    "cotor_twisted",
    "model",
]
