"""Exact homology of Yang-Baxter operators.

Laurent polynomial and integer arithmetic, sparse Smith normal form, the
set-theoretic (graphic and cube-coloring) chain complexes, the one-term and
two-term complexes of linear operators with walls, and reports built on them.
"""

from .laurent import *  # noqa: F401,F403
from .rings import *  # noqa: F401,F403
from .matrix import *  # noqa: F401,F403
from .snf import *  # noqa: F401,F403
from .homology import *  # noqa: F401,F403
from .operators import *  # noqa: F401,F403
from .complexes import *  # noqa: F401,F403
from .engine import *  # noqa: F401,F403
from . import laurent, rings, matrix, snf, homology, operators, complexes, engine

__version__ = "0.1.0"

__all__ = (
    laurent.__all__
    + rings.__all__
    + matrix.__all__
    + snf.__all__
    + homology.__all__
    + operators.__all__
    + complexes.__all__
    + engine.__all__
    + ["__version__"]
)
