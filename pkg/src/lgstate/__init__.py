"""Exact computer algebra for affine Landau-Ginzburg B-models."""
from .poly import Form, Poly, RingSpec, exterior_d, wedge
from .kernels import BACKEND

__all__ = ["Form", "Poly", "RingSpec", "exterior_d", "wedge", "BACKEND"]
__version__ = "0.1.0"
