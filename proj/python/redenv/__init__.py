"""Exact computations with baby Verma modules over reduced enveloping
algebras of gl_N / sl_N in positive characteristic.

Thin Python surface over the C++ core; heavier results (filtration reports,
suite runs) come back as JSON strings ready for ``json.loads``.
"""

try:
    from redenv._core import *  # noqa: F401,F403  (installed layout)
    from redenv._core import __version__  # noqa: F401
except ImportError:  # in-tree test layout: _core next to the package on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
