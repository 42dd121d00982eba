"""Exception types shared across the package.

Every data/domain failure raises a subclass of ``HinetError`` so callers
(CLI, HTTP service) can distinguish bad input from bugs. The class name is
the stable error code surfaced over the wire.
"""


class HinetError(Exception):
    """Base class for all domain errors raised by hinet."""


# -- graph model ------------------------------------------------------------

class UnknownLabel(HinetError):
    """An edge references a label that was not declared in its node set."""


class NonPositiveWeight(HinetError):
    """Edge weights must be positive integers."""


class DuplicateLabelInSet(HinetError):
    """Labels within one node set must be pairwise distinct."""


class EmptySelection(HinetError):
    """A subnetwork must keep at least one focal node."""


class EmptyHin(HinetError):
    """The operation requires a graph with total weight >= 1."""


# -- ingestion --------------------------------------------------------------

class MissingColumn(HinetError):
    """A column named in the build spec is absent from the table."""


class EmptyAfterFilter(HinetError):
    """Row filtering left nothing to ingest."""


class NonIntegerWeightCell(HinetError):
    """Weight column cells must parse as integers >= 1."""


class InconsistentAttribute(HinetError):
    """The same node received two different values for one attribute."""


# -- node metrics -----------------------------------------------------------

class NodeNotInGroup(HinetError):
    """Group-normalized quantity requires the focal node to be a member."""


class EmptyGroupWeight(HinetError):
    """The subgroup carries no interaction weight."""


class MissingAttribute(HinetError):
    """A focal node lacks the grouping attribute (or it is empty)."""


# -- dyadic pruning ---------------------------------------------------------

class InvalidProbability(HinetError):
    """Probabilities must lie in their documented ranges."""


# -- clustering -------------------------------------------------------------

class InvalidPartition(HinetError):
    """Partition labels do not form a valid dense grouping of the focal set."""


class TooLarge(HinetError):
    """Exhaustive enumeration refused: focal set exceeds the size cap."""


class UnknownCluster(HinetError):
    """The requested cluster id does not exist in the partition."""


class NotBipartiteProjection(HinetError):
    """Projection pruning needs composite target labels (>= 2 parts)."""


# -- service ----------------------------------------------------------------

class UnknownId(HinetError):
    """No dataset or graph with that id exists in the session."""
