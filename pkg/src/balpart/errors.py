"""Exception types raised by balpart."""


class BalpartError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(BalpartError, ValueError):
    def __init__(self, path, lineno, line):
        self.path = str(path)
        self.lineno = lineno
        self.line = line
        super().__init__(f"{self.path}:{lineno}: cannot parse edge line {line!r}")


class EmptyGraphError(BalpartError, ValueError):
    pass


class InfeasibleBalanceError(BalpartError, ValueError):
    pass


class SingleShardError(BalpartError, ValueError):
    """Raised by quantities that compare against *other* shards when k == 1."""


class InvalidOrderError(BalpartError, ValueError):
    pass


class MissingPartitionError(BalpartError, ValueError):
    pass


class RelocationInfeasibleError(BalpartError, RuntimeError):
    pass
