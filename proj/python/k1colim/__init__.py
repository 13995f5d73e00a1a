"""Exact K1 computations over Z and Z/m with checkable certificates.

Everything lives in the compiled extension; this package re-exports it.
"""

from k1colim._core import *  # noqa: F401,F403
from k1colim._core import __doc__  # noqa: F401

__version__ = "0.1.0"
