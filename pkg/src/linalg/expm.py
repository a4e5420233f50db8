"""Matrix exponential by scaling and squaring around a truncated Taylor series."""

import numpy as np

from .dense import ComplexMatrix, as_matrix, frob_norm, require_square

TAYLOR_ORDER = 18
SCALED_NORM = 0.5


def mat_exp(x: ComplexMatrix) -> ComplexMatrix:
    """Return exp(X) for a square matrix X."""
    x = as_matrix(x, "exponent")
    n = require_square(x, "exponent")

    norm = frob_norm(x)
    squarings = 0
    if norm > SCALED_NORM:
        squarings = int(np.ceil(np.log2(norm / SCALED_NORM)))
    scaled = x / 2.0 ** squarings

    # Horner evaluation of sum_k scaled^k / k!
    identity = np.eye(n, dtype=np.complex128)
    result = identity.copy()
    for k in range(TAYLOR_ORDER, 0, -1):
        result = identity + (scaled @ result) / k

    for _ in range(squarings):
        result = result @ result
    return result
