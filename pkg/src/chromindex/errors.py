"""Exception hierarchy for the chromindex package.

``FallbackTrigger`` marks the failure modes that the end-to-end driver is
allowed to recover from by downgrading to the always-correct max-degree-plus-one
coloring.  Everything else signals a caller error or an internal invariant
breach.
"""

from __future__ import annotations


class ChromindexError(Exception):
    """Base class for all package errors."""


class FallbackTrigger(ChromindexError):
    """A step failed in a way the pipeline recovers from by falling back."""


# -- graph construction -------------------------------------------------------

class LoopRejected(ChromindexError):
    """Attempt to add a loop edge (u == v)."""


class MultiplicityViolation(ChromindexError):
    """A parallel edge would avoid the declared multi-center."""


class OverlappingSides(ChromindexError):
    """Bipartition sides are not disjoint."""


# -- coloring ------------------------------------------------------------------

class ColorOutOfPalette(ChromindexError):
    """Color index outside [1, k]."""


class ProperViolation(ChromindexError):
    """An assignment would give two edges at one vertex the same color."""


class StaleChain(ChromindexError):
    """A Kempe chain no longer matches the coloring it was computed from."""


class InternalRepairFailure(ChromindexError):
    """The fan/swap repair could not finish.  Indicates an implementation bug:
    the construction is guaranteed to succeed on valid inputs."""


class NotTotal(ChromindexError):
    """An operation required a total coloring but found uncolored edges."""


# -- balance -------------------------------------------------------------------

class InfeasiblePalette(FallbackTrigger):
    """No proper coloring with the requested number of colors was found."""


class PreconditionViolated(ChromindexError):
    """A structural precondition of an operation does not hold."""


class RetriesExhausted(FallbackTrigger):
    """Randomized retries ran out; carries the best attempt found."""

    def __init__(self, message: str, best=None, max_imbalance: float | None = None):
        super().__init__(message)
        self.best = best
        self.max_imbalance = max_imbalance


# -- matching ------------------------------------------------------------------

class NotBipartite(ChromindexError):
    """Graph has an edge inside one of the declared sides."""


class NoPerfectMatching(FallbackTrigger):
    """No perfect matching exists; carries a Hall violator certificate."""

    def __init__(self, message: str, violator=None, neighborhood=None):
        super().__init__(message)
        self.violator = list(violator or [])
        self.neighborhood = list(neighborhood or [])


# -- path cover ----------------------------------------------------------------

class CoverNotFound(FallbackTrigger):
    """The path-cover heuristic exhausted its budget; carries the largest
    partial cover reached."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# -- factorization -------------------------------------------------------------

class NoAlternatingPath(FallbackTrigger):
    """No usable alternating path for a missing-color pair; carries counts."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = dict(details or {})


class RenameInfeasible(ChromindexError):
    """Class-size multisets of the two residual colorings differ (bug surface)."""


class ResidualNotRegular(ChromindexError):
    """The uncolored remainder is not regular (bug surface)."""


class NoNonNeighbor(FallbackTrigger):
    """The multi-center is adjacent to every other vertex."""


class FactorizationFailed(FallbackTrigger):
    """Wraps the step failure that aborted a factorization run."""

    def __init__(self, message: str, report=None, cause: Exception | None = None):
        super().__init__(message)
        self.report = report
        self.cause = cause


# -- pipeline ------------------------------------------------------------------

class OverfullInput(ChromindexError):
    """Operation requires a non-overfull graph."""


class NotRealizable(ChromindexError):
    """Degree sequence fails a realizability condition."""

    def __init__(self, message: str, condition: str):
        super().__init__(message)
        self.condition = condition


class DegenerateDeficiency(FallbackTrigger):
    """Total deficiency is too small to attach the star vertex."""


class NeighborShortage(FallbackTrigger):
    """The star vertex has fewer than two usable neighbors for a peel step."""


# -- oracle --------------------------------------------------------------------

class TooLarge(ChromindexError):
    """Instance exceeds the exact-search size limit."""
