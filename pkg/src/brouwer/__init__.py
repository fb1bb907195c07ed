"""Brouwer-operations, neighbourhood functions and bar recursion on Baire space,
made executable and checked at bounded depth."""

from .errors import (
    BrouwerError,
    DepthBudgetExceeded,
    DominationViolated,
    FuelExhausted,
    LeafHasNoChildren,
    NaturalOverflow,
    NonUniformDefault,
    NotBarWithinDepth,
    PremiseViolated,
    WireFormatError,
)
from .sequences import ZEROS, EventuallyPeriodic, Oracle, extend, monus, sg, take
from .trees import EvalResult, InductiveAlgebra, Leaf, Node, bar_recursor, evaluate, to_neighborhood, trim

__all__ = [
    "BrouwerError",
    "DepthBudgetExceeded",
    "DominationViolated",
    "FuelExhausted",
    "LeafHasNoChildren",
    "NaturalOverflow",
    "NonUniformDefault",
    "NotBarWithinDepth",
    "PremiseViolated",
    "WireFormatError",
    "ZEROS",
    "EventuallyPeriodic",
    "Oracle",
    "extend",
    "monus",
    "sg",
    "take",
    "EvalResult",
    "InductiveAlgebra",
    "Leaf",
    "Node",
    "bar_recursor",
    "evaluate",
    "to_neighborhood",
    "trim",
]

__version__ = "0.1.0"
