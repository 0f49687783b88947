"""Monotonicity testing on the Boolean hypercube.

Functions are truth tables written ``n:HEX`` (table entry 0 is the least
significant bit); exact quantities come back as ``fractions.Fraction``.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
