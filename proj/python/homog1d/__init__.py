"""1D homogeneous reductions of 2D Euler and SQG."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
