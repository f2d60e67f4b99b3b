"""Exception types shared across the package."""


class RoadRulesError(Exception):
    """Base class for errors raised by this package."""


class InputError(RoadRulesError):
    """Malformed or inconsistent input data (exit code 1 in the CLI)."""


class GraphError(InputError):
    """Road-graph invariant violated while building or loading a network."""


class InternalError(RoadRulesError):
    """An internal invariant was broken; indicates a bug (exit code 2)."""
