"""Exception hierarchy and size guards shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, replace


class StructureError(ValueError):
    """A structure violates its defining laws (order, lattice, polarity ...)."""


class PolarityError(StructureError):
    """A map or word has the wrong polarity for the requested operation."""


class GuardExceeded(RuntimeError):
    """An enumeration would exceed a configured size guard.

    Never swallowed silently: callers either fall back to a cheaper
    sufficient condition or report ``unknown_guard``.
    """

    def __init__(self, what: str, limit: int, needed: int | None = None):
        self.what = what
        self.limit = limit
        self.needed = needed
        msg = f"{what}: guard {limit} exceeded"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)


class TheoremViolation(AssertionError):
    """A finite instance of a proved theorem came out false.

    This signals a bug in the library, never a property of the input.
    """


@dataclass(frozen=True)
class Guards:
    """Configurable size limits.

    ``product`` bounds |A1|*|A2| for brute-force subalgebra enumeration,
    ``subuniverses`` bounds the number of subuniverses collected,
    ``algebra`` is the default size cap for ``all_subuniverses`` on a plain
    algebra, ``congruences`` the size cap for congruence enumeration,
    ``term_budget`` the DAG-size budget for term search.
    """

    product: int = 4096
    subuniverses: int = 10**6
    algebra: int = 64
    congruences: int = 32
    term_budget: int = 12
    upsets: int = 2**20
    iso: int = 12
    c_depth: int = 8

    def with_(self, **changes) -> "Guards":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_GUARDS = Guards()


def check(cond: bool, message: str) -> None:
    """Raise :class:`TheoremViolation` unless ``cond`` holds."""
    if not cond:
        raise TheoremViolation(message)
