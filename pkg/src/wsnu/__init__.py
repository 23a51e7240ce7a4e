"""Bound states of the generalized Woods-Saxon potential by the Nikiforov-Uvarov method.

Submodules: ``nu_core`` (the generic method), ``ws_model`` (potential and
dimensionless parameters), ``spectrum`` (closed-form levels), ``wavefn``
(eigenfunctions, residual check, normalisation), ``oracle`` (finite
differences and Numerov shooting), ``figures``, ``verify`` and ``cli``.
"""

from importlib.metadata import PackageNotFoundError, version

from .kernels import BACKEND
from .spectrum import EnergyLevel, enumerate_levels, level
from .ws_model import HERMITIAN, NON_PT, PT_SYMMETRIC, PotentialParams

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

__all__ = [
    "BACKEND", "EnergyLevel", "HERMITIAN", "NON_PT", "PT_SYMMETRIC", "PotentialParams",
    "enumerate_levels", "level", "__version__",
]
