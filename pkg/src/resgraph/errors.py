"""Exception hierarchy for the resgraph package.

Every error names the offending entity (vertex/edge/face/matching id) in its
message so CLI output stays actionable.
"""


class ResgraphError(Exception):
    """Base class for all package errors."""


class ParseError(ResgraphError):
    """Input document is malformed (missing keys, wrong types, bad ids)."""


class InvalidEmbedding(ResgraphError):
    """Declared faces do not form a valid plane embedding (map validity,
    Euler relation, or connectivity failure)."""


class NotBipartite(ResgraphError):
    """Vertex 2-coloring is not proper."""


class PeripheryNotCycle(ResgraphError):
    """Boundary walk of the infinite face repeats a vertex."""


class NotSimpleCycle(ResgraphError):
    """Vertex sequence is not a simple cycle of the graph."""


class NotAHandle(ResgraphError):
    """Path is not a handle (internal vertex of degree != 2, repeated
    vertex, or non-adjacent consecutive vertices)."""


class HandleNotOnPeriphery(NotAHandle):
    """Handle edges are not all on the periphery."""


class NoPerfectMatching(ResgraphError):
    """Graph has no perfect matching where one is required."""


class NonTermination(ResgraphError):
    """Facial-flip walk exceeded its step budget; input is outside the
    weakly-elementary contract."""


class NotElementary(ResgraphError):
    """Graph is not elementary (disconnected or has forbidden edges)."""


class NoReducibleFace(ResgraphError):
    """No reducible face found while peeling; contract violation for
    elementary inputs."""


class InfiniteFaceNotForcing(ResgraphError):
    """Coding requested for a graph whose infinite face is not forcing."""


class NotWeaklyElementary(ResgraphError):
    """Removing forbidden edges created a new finite face."""


class CodeNotInList(ResgraphError):
    """Code string is not in the coding list being decoded."""


class InternalContractViolation(ResgraphError):
    """An internal invariant failed; indicates a bug or an input outside
    the documented contracts."""


class NotALattice(ResgraphError):
    """A matching pair has no unique meet or join."""


class ThetaNotTransitive(ResgraphError):
    """Djokovic-Winkler relation is not transitive; graph is not a
    partial cube."""


class UnknownInstance(ResgraphError):
    """Requested corpus instance name does not exist."""


class DisconnectedSpec(ResgraphError):
    """Hexagon coordinate set does not induce a connected benzenoid."""


class CapExceeded(ResgraphError):
    """Matching enumeration exceeded the configured oracle cap."""
