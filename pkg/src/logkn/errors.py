"""Exception hierarchy shared by all logkn modules."""


class LogKNError(Exception):
    """Base class; ``code`` is the machine-readable name used by the CLI."""

    code = "LogKNError"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class MalformedComplex(LogKNError):
    code = "MalformedComplex"


class NotChainMap(LogKNError):
    code = "NotChainMap"


class RankTooLarge(LogKNError):
    code = "RankTooLarge"


class NotAHomomorphism(LogKNError):
    code = "NotAHomomorphism"


class EmptyMultiplicity(LogKNError):
    code = "EmptyMultiplicity"


class CenterNotInDivisor(LogKNError):
    code = "CenterNotInDivisor"


class EmptyModel(LogKNError):
    code = "EmptyModel"


class GraphFormatError(LogKNError):
    code = "GraphFormatError"


class InvalidGraph(LogKNError):
    """Raised when an operation needs a valid graph; carries the issue list."""

    code = "InvalidGraph"

    def __init__(self, issues):
        self.issues = list(issues)
        first = self.issues[0].code if self.issues else "InvalidGraph"
        self.code = first
        super().__init__("; ".join(str(i) for i in self.issues))


class InvalidMove(LogKNError):
    code = "InvalidMove"


class NoMarkToMove(LogKNError):
    code = "NoMarkToMove"


class NotSemistable(LogKNError):
    code = "NotSemistable"


class InvariantViolation(LogKNError):
    """An invariant that must hold by construction failed; the CLI exits with 2."""

    code = "InvariantViolation"
