"""Python bindings for the msched scheduling simulator."""

from ._msched import *  # noqa: F401,F403
from ._msched import ConfigError, __doc__  # noqa: F401

__version__ = "0.1.0"
