"""Exact finite-scale engine for recurrence combinatorics on G-spaces."""

from .algebra import (
    ActionTable,
    GroupTable,
    SubsetMask,
    Universe,
    cyclic_group,
    dihedral_group,
    explicit_group,
    inverse_set,
    left_regular_action,
    make_action,
    make_group,
    product_group,
    product_set,
    symmetric_group,
    symmetrize,
    translate,
)
from .errors import (
    GsrecError,
    ParseError,
    PropertyFailure,
    SizeLimitError,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    "ActionTable",
    "GroupTable",
    "SubsetMask",
    "Universe",
    "GsrecError",
    "ParseError",
    "PropertyFailure",
    "SizeLimitError",
    "ValidationError",
    "cyclic_group",
    "dihedral_group",
    "explicit_group",
    "inverse_set",
    "left_regular_action",
    "make_action",
    "make_group",
    "product_group",
    "product_set",
    "symmetric_group",
    "symmetrize",
    "translate",
    "__version__",
]
