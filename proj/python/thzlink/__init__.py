"""THz channel model for links between antennas inside a chip package."""

from ._thzlink import *  # noqa: F401,F403
from ._thzlink import __doc__  # noqa: F401

__version__ = "0.1.0"
