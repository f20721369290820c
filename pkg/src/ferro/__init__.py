"""ferro: fermionic convolution, Gaussification, non-Gaussianity measures and tests."""

from . import circuits, clifford, convolution, gaussian, grassmann, io, measures, states, testing

__all__ = [
    "circuits",
    "clifford",
    "convolution",
    "gaussian",
    "grassmann",
    "io",
    "measures",
    "states",
    "testing",
]

__version__ = "0.1.0"
