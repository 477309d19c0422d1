"""Exception types shared across the package."""


class GraphError(ValueError):
    """Base class for graph construction failures."""


class SelfLoopError(GraphError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphError):
    """The same unordered edge appears more than once."""


class DisconnectedError(GraphError):
    """The edge set does not connect all vertices."""


class OutOfRangeError(GraphError):
    """An edge endpoint is not a valid vertex id."""


class ParameterOutOfRangeError(ValueError):
    """A generator or routine parameter violates its precondition."""


class RuntimeCapError(RuntimeError):
    """A simulation exceeded its round or event budget.

    Under the protocols simulated here this signals a bug, not a slow
    run: on a connected graph the informed set grows to everything with
    probability one long before the default caps.
    """


class CapExceededError(RuntimeError):
    """A combinatorial enumeration exceeded its work cap."""


class DegenerateFitError(ValueError):
    """A regression was requested on points that cannot determine a slope."""


class RequiresFamilyError(ValueError):
    """An operation needs a family of at least three graph sizes."""


class InfeasiblePairError(ValueError):
    """The requested exponent pair lies outside the attainable region."""


class ConfigError(ValueError):
    """A configuration file line could not be parsed."""
