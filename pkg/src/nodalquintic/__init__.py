"""Arithmetic and geometry of the nodal quintic threefold P5(x1, x2) = P5(x3, x4).

Submodules are imported on demand; the heavy ones compile numba kernels on
first use.
"""

__version__ = "0.1.0"

__all__ = ["arith", "chebyshev", "pointcount", "lfunction", "quatorder", "idealtheta",
           "brandt", "hodge", "cli", "tables"]
