"""Polynomial solutions of the generalized confluent Heun equation.

Exact construction of the solvability conditions, the finite orthogonal
polynomial sequences they generate, and the closed-form spectra of the
softcore Coulomb potential, with independent numerical oracles.
"""

from .coulomb import CoulombProblem, spectrum
from .heun import GcheParams, coefficients, delta_sequence, epsilon0_roots
from .polycore import RationalPoly, Var

__version__ = "0.1.0"

__all__ = [
    "CoulombProblem",
    "GcheParams",
    "RationalPoly",
    "Var",
    "coefficients",
    "delta_sequence",
    "epsilon0_roots",
    "spectrum",
]
