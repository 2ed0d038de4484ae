"""Split decompositions of finite groups into an abelian subgroup and noncommuting sets."""

from .catalog import load, make, resolve
from .decompose import SplitDecomposition, validate
from .errors import (
    BudgetExceeded,
    InfeasibleError,
    NotPromotableError,
    NSplitError,
    ParseError,
    PreconditionError,
    ResourceError,
    ValidationError,
)
from .group import Group, SubgroupRef
from .minimize import exact_min_fixed_A, min_over_all_A

__all__ = [
    "BudgetExceeded",
    "Group",
    "InfeasibleError",
    "NSplitError",
    "NotPromotableError",
    "ParseError",
    "PreconditionError",
    "ResourceError",
    "SplitDecomposition",
    "SubgroupRef",
    "ValidationError",
    "exact_min_fixed_A",
    "load",
    "make",
    "min_over_all_A",
    "resolve",
    "validate",
]

__version__ = "0.1.0"
