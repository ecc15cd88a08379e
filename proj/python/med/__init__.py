"""Morphing edge drawings.

Partial-edge (stub) geometry, crossing analysis, crossing-free morphing
schedules, and export of the animation as a JSON timeline or an animated
SVG document. The heavy lifting happens in the C++ extension module.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
