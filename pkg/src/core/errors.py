"""Exception hierarchy for complab.

InputError subclasses map to CLI exit code 2. Verification failures are
never raised; they are reported as CheckResult entries.
"""

from __future__ import annotations


class ComplabError(Exception):
    """Base class for all complab errors."""


class InputError(ComplabError):
    """Malformed or invalid input (exit code 2)."""


class AnalysisError(ComplabError):
    """An analysis precondition does not hold for the given instance."""


class ConfigError(InputError):
    """Invalid configuration value."""


# ─── bipartite tournament validation ─────────────────────


class _PairError(InputError):
    reason = ""

    def __init__(self, u: str, v: str):
        self.u = u
        self.v = v
        super().__init__(f"{self.reason}: ({u}, {v})")


class MissingArc(_PairError):
    reason = "no arc between cross pair"


class DoubleArc(_PairError):
    reason = "both orientations present for cross pair"


class SamePartArc(_PairError):
    reason = "arc joins two vertices of the same part"


class DuplicateArc(_PairError):
    reason = "duplicate arc"


class SelfLoop(InputError):
    def __init__(self, v: str):
        self.v = v
        super().__init__(f"self-loop at {v} is not allowed")


class InvalidPartition(InputError):
    def __init__(self, message: str):
        super().__init__(f"parts do not partition the vertex set: {message}")


class UnknownLabel(InputError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unknown vertex label: {label!r}")


class SchemaError(InputError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        where = f" at {path}" if path else ""
        super().__init__(f"input does not match schema{where}: {message}")


class EmptyDigraph(InputError):
    def __init__(self):
        super().__init__("digraph has no vertices")


# ─── generators ──────────────────────────────────────────


class TooLarge(InputError):
    def __init__(self, n1: int, n2: int, cap: int):
        self.n1 = n1
        self.n2 = n2
        self.cap = cap
        super().__init__(
            f"enumeration of ({n1},{n2}) needs 2^{n1 * n2} orientations; "
            f"n1*n2 must be <= {cap}. Use `sweep --samples` for random sampling instead."
        )


class InfeasibleParts(InputError):
    def __init__(self, n1: int, n2: int):
        self.n1 = n1
        self.n2 = n2
        super().__init__(
            f"no sinkless bipartite tournament exists with part sizes ({n1},{n2}); both parts need >= 2 vertices"
        )


class InvalidGenSpec(InputError):
    def __init__(self, message: str):
        super().__init__(f"invalid generator spec: {message}")


class UnknownFixture(InputError):
    def __init__(self, name: str, known: list[str]):
        self.name = name
        super().__init__(f"unknown fixture {name!r}; known: {', '.join(known)}")


class RetriesExhausted(AnalysisError):
    def __init__(self, operation: str, attempts: int):
        self.operation = operation
        self.attempts = attempts
        super().__init__(f"{operation}: no acceptable sample after {attempts} attempts")


# ─── analysis preconditions ──────────────────────────────


class ZetaZero(AnalysisError):
    def __init__(self):
        super().__init__("parity partition needs a sink elimination index >= 1")


class NotAcyclic(AnalysisError):
    def __init__(self):
        super().__init__("instance has a directed cycle; the acyclic prediction does not apply")


class NotCyclic(AnalysisError):
    def __init__(self):
        super().__init__("instance is acyclic; the cyclic prediction does not apply")


class CapExceeded(AnalysisError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"no repetition in the matrix power sequence within {cap} powers")
