"""Exception hierarchy shared by every qmap module."""

from typing import Optional

import numpy as np


class QmapError(Exception):
    """Base class for all qmap errors"""


class DimensionMismatch(QmapError, ValueError):
    """Operand shapes are inconsistent"""


class DimensionNotSquare(DimensionMismatch):
    """Matrix size is not a perfect square d²"""


class NotHermitian(QmapError, ValueError):
    """Matrix fails the Hermiticity tolerance"""


class NonFiniteEntries(QmapError, ValueError):
    """Matrix holds NaN or Inf"""


class NumericalError(QmapError, np.linalg.LinAlgError):
    """A numerical routine could not produce a trustworthy answer"""


class NoConvergence(NumericalError):
    pass


class Singular(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass


class NumericalBreakdown(NumericalError):
    pass


class TargetTooSmall(QmapError, ValueError):
    pass


class SignPatternMismatch(QmapError, ValueError):
    pass


class DocumentError(QmapError):
    """Base class for .qmap.json problems"""


class ParseError(DocumentError):
    """Malformed document; ``location`` names the line or field at fault"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ShapeError(DocumentError):
    """Payload inconsistent with the declared kind or dim"""


class FixtureError(QmapError, ValueError):
    pass


class UnknownFixture(FixtureError):
    pass


class ParamOutOfRange(FixtureError):
    pass


class InvalidSign(QmapError, ValueError):
    """OSR term sign other than +1 or -1"""


class ScaleOutOfRange(QmapError, ValueError):
    """Generator scale outside [0, random_scale_limit]"""


class InvalidMetric(QmapError, ValueError):
    """Metric counts negative or both zero"""
