"""Exception hierarchy and validity classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class SphericalGeometryError(ValueError):
    """Base class for all errors raised by this package."""


class DomainError(SphericalGeometryError):
    """An input lies outside the domain of a trigonometric rule."""


class DegenerateError(SphericalGeometryError):
    """The configuration is (numerically) flat; derivatives are meaningless."""


class NotRealizable(DomainError):
    """No spherical triangle or tetrahedron has the requested data."""


class StepTooLarge(NotRealizable):
    """A finite-difference perturbation left the valid domain."""


class ExhaustedError(RuntimeError):
    """Rejection sampling ran out of its redraw budget."""


class Status(enum.Enum):
    VALID = "valid"
    OUT_OF_RANGE = "out_of_range"
    DEGENERATE = "degenerate"
    NOT_REALIZABLE = "not_realizable"


@dataclass(frozen=True)
class Validity:
    status: Status
    detail: Any = None

    def __bool__(self) -> bool:
        return self.status is Status.VALID

    @classmethod
    def valid(cls) -> "Validity":
        return cls(Status.VALID)
