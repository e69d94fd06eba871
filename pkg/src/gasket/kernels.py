"""Backend selection for the cell-sweep kernels.

The compiled extension is used when it is importable, the inputs fit its
fixed-width arithmetic, and GASKET_PURE is not set. Otherwise the pure
Python version runs on arbitrary-size integers.
"""
import os
from array import array

from . import _kernels_py as pure

try:
    if os.environ.get("GASKET_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels as compiled
except ImportError:
    compiled = None

BACKEND = "cython" if compiled is not None else "python"

_VALUE_LIMIT = 1 << 62
_SUM_LIMIT = 1 << 125


def _edge_square_sum(flat):
    total = 0
    for t in range(0, len(flat), 3):
        x0, x1, x2 = flat[t], flat[t + 1], flat[t + 2]
        total += (x0 - x1) ** 2 + (x1 - x2) ** 2 + (x0 - x2) ** 2
    return total


def _fits(a, b, depth):
    biggest = max((abs(x) for x in a), default=0)
    biggest = max(biggest, max((abs(x) for x in b), default=0))
    if biggest * 5**depth >= _VALUE_LIMIT:
        return False
    # refined squared edge sums grow exactly by 15 per level
    bound = max(_edge_square_sum(a), _edge_square_sum(b)) * 15**depth
    return bound < _SUM_LIMIT


def edge_pair_sum(a, b, depth, backend=None):
    """Sum of edge products over every cell after ``depth`` refinements.

    ``a`` and ``b`` are flat integer corner triples at a common scale;
    the result is at scale 25**depth times the input scale squared.
    """
    use = backend or BACKEND
    if use == "cython" and compiled is not None and _fits(a, b, depth):
        return compiled.edge_pair_sum(array("q", a), array("q", b), depth)
    return pure.edge_pair_sum(a, b, depth)

