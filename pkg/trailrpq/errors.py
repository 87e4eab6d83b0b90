"""
Exception hierarchy for trailrpq.

Every error raised on bad input or on an exceeded guard derives from TrailRpqError,
so front ends can report them uniformly.
"""


class TrailRpqError(Exception):
    """Base class for all trailrpq errors."""


class ConfigError(TrailRpqError):
    """An environment variable holds an invalid value."""

    def __init__(self, variable: str, message: str):
        super().__init__(f"{variable}: {message}")
        self.variable = variable


class RegexSyntaxError(TrailRpqError):
    """The regular expression text cannot be parsed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class AutomatonTooLarge(TrailRpqError):
    """An automaton construction exceeded the configured state cap."""

    def __init__(self, limit: int):
        super().__init__(f"automaton too large: more than {limit} states (raise TRAILRPQ_STATE_CAP to allow more)")
        self.limit = limit


class GraphFormatError(TrailRpqError):
    """A graph, EDP instance or automaton file is malformed."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TrailError(TrailRpqError):
    """An edge sequence is not a trail of the graph."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (index {index})")
        self.index = index


class UnknownNodeError(TrailRpqError):
    """A node name does not occur in the graph."""

    def __init__(self, name: str):
        super().__init__(f"unknown node: {name}")
        self.name = name


class OracleTooLarge(TrailRpqError):
    """An exhaustive oracle refused an instance above its edge guard."""

    def __init__(self, edges: int, limit: int):
        super().__init__(f"instance too large for oracle: {edges} edges (limit {limit})")
        self.edges = edges
        self.limit = limit


class BudgetExceeded(TrailRpqError):
    """The summary engine generated more candidate summaries than allowed."""

    def __init__(self, limit: int):
        super().__init__(
            f"summary engine exceeded its budget of {limit} candidate summaries; retry with --engine brute"
        )
        self.limit = limit


class EngineMismatch(TrailRpqError):
    """An explicitly requested engine does not apply to the language."""


class WitnessError(TrailRpqError):
    """A hardness witness cannot be extracted or does not validate."""


class ReducedNameClash(TrailRpqError):
    """An EDP instance uses a node name reserved for gadget construction."""

    def __init__(self, name: str):
        super().__init__(f"node name {name!r} is reserved for gadget nodes (names starting with '_')")
        self.name = name
