"""Eigenvalue spectra of the two-dimensional Neumann-Poincare operator.

Domains are described by the coefficients of their exterior conformal map;
the spectrum is computed from the Grunsky coefficient matrix and can be
cross-checked against a Nystrom discretization of the boundary integral
operator.
"""

from ._npspec import *  # noqa: F401,F403
from ._npspec import __version__  # noqa: F401
