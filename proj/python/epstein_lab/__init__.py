"""Epstein zeta functions of positive-definite binary quadratic forms.

The compiled core exposes evaluation (Dirichlet series and analytic
continuation), the Hardy-type critical-line function, zero scanning with
gap statistics, and the supporting analytic machinery (smoothing
parameters, oscillatory-integral bound checks, continued fractions,
phase functions).
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
