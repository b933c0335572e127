"""Volterra integral operators with Humbert-function kernels."""

from vhi._core import *  # noqa: F401,F403
from vhi._core import __version__  # noqa: F401
