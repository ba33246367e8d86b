"""Kelvin transforms, DN maps and distinguishability bounds."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, GridMismatchError, SingularityError  # noqa: F401
