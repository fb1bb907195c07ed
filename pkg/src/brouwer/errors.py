"""Exception hierarchy.

Domain errors (``BrouwerError`` subclasses) are outcomes of a well-formed
request that the mathematics refuses: a stream that is never secured within
the fuel, a predicate that is not a bar at the probed depth, and so on.
Malformed input raises ``WireFormatError`` instead.
"""

from __future__ import annotations

from typing import Any


class BrouwerError(Exception):
    """Base class for domain errors; each knows its machine-readable form."""

    kind = "BrouwerError"

    def details(self) -> dict[str, Any]:
        return {}

    def to_wire(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.details()}


class _PathError(BrouwerError):
    def __init__(self, path, message: str = ""):
        self.path = tuple(path)
        super().__init__(message or f"{self.kind} at {list(self.path)}")

    def details(self):
        return {"path": list(self.path)}


class LeafHasNoChildren(BrouwerError):
    kind = "LeafHasNoChildren"


class DepthBudgetExceeded(BrouwerError):
    kind = "DepthBudgetExceeded"

    def __init__(self, depth: int, limit: int):
        self.depth = depth
        self.limit = limit
        super().__init__(f"depth {depth} exceeds the cap {limit}")

    def details(self):
        return {"depth": self.depth, "limit": self.limit}


class FuelExhausted(_PathError):
    kind = "FuelExhausted"


class DominationViolated(_PathError):
    kind = "DominationViolated"


class NonUniformDefault(_PathError):
    kind = "NonUniformDefault"


class NotBarWithinDepth(BrouwerError):
    kind = "NotBarWithinDepth"

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__(f"path {list(self.witness)} has no barred prefix")

    def details(self):
        return {"witness": list(self.witness)}


class PremiseViolated(BrouwerError):
    kind = "PremiseViolated"


class NaturalOverflow(BrouwerError, OverflowError):
    kind = "NaturalOverflow"


class WireFormatError(ValueError):
    """Input that does not parse against a wire schema."""
