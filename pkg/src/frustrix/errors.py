"""Exception types and capacity limits shared by every module."""

import os


class FrustrixError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(FrustrixError, ValueError):
    """Malformed edge list, illegal parallel edge, self-loop, bad encoding."""


class DimensionError(FrustrixError, ValueError):
    """A state, signature or vertex set does not match the graph size."""


class InvalidCutError(FrustrixError, ValueError):
    """A vertex set that does not describe a usable cut."""


class ConnectivityError(FrustrixError, ValueError):
    """An operation that needs a connected graph received a disconnected one."""


class CapacityError(FrustrixError):
    """Input larger than the configured limit for an exhaustive routine."""


class RuleInapplicableError(FrustrixError):
    """A reduction was asked to fire where its side conditions fail."""


class NoCycleError(FrustrixError, ValueError):
    """Girth requested for an acyclic graph."""


MODEL_MAX_N = 64
SOLVER_MAX_N = 30
BRANCH_BOUND_MAX_N = 48
CENSUS_MAX_N = 12
CANONICAL_MAX_N = 16
SWITCH_ISO_MAX_N = 10
EQUILIBRATED_MAX_N = 20


def solver_limit(default=SOLVER_MAX_N):
    """Limit for exhaustive solvers; FRUSTRIX_MAX_N overrides it when set."""
    raw = os.environ.get("FRUSTRIX_MAX_N")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default


def check_capacity(n, limit, what):
    if n > limit:
        raise CapacityError(f"{what}: n={n} exceeds limit {limit}")
