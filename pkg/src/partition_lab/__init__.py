"""Exact verification of colored-partition identities on staggered arrays."""

from .lattice import AB, AG, ArrayShape, Cell, FrequencyArray, is_admissible
from .series import Series

__all__ = ["AB", "AG", "ArrayShape", "Cell", "FrequencyArray", "Series", "is_admissible"]
__version__ = "0.1.0"
