"""Box-product kernel algebra, graphon spectra and polynomial filters."""

from ._boxkernel import *  # noqa: F401,F403
from ._boxkernel import __doc__  # noqa: F401

__version__ = "0.1.0"
