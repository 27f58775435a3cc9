"""Entanglement dynamics of two oscillators in a common thermal environment.

Covariance matrices use the quadrature ordering (x, p_x, y, p_y) with hbar = 1.
Functions taking a covariance matrix accept either a CovarianceMatrix or a
symmetric 4x4 numpy array.
"""

from ._core import *  # noqa: F401,F403
from ._core import PhysicalityError, NumericalError  # noqa: F401

__version__ = "0.1.0"
