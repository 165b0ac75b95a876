"""ELM-FBPINN least-squares solver for linear 1D boundary-value problems."""

from ._core import *  # noqa: F401,F403
from ._core import ElmfbError, __doc__  # noqa: F401

__version__ = "0.1.0"
