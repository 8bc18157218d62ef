"""Counting-matrix KDE reductions, Schur identities and KDE solvers.

Exact rationals cross the boundary as strings ("a/b"); pass ints, "a/b"
strings, or fractions.Fraction (anything whose str() is a ratio).
"""

from fractions import Fraction

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # build-tree layout: _core.so next to the package on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401


def as_fraction(value):
    """Fraction from the exact 'a/b' strings returned by the native module."""
    return Fraction(value)
