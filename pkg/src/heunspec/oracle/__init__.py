"""Independent numerical oracles used to cross-check the exact machinery."""

from .fd import FdGrid, count_bound_states, fd_spectrum, match_eigenvalue
from .quadrature import quadrature
from .special import kummer, kummer_m, kummer_u, laguerre, laguerre_roots

__all__ = [
    "FdGrid",
    "count_bound_states",
    "fd_spectrum",
    "match_eigenvalue",
    "quadrature",
    "kummer",
    "kummer_m",
    "kummer_u",
    "laguerre",
    "laguerre_roots",
]
