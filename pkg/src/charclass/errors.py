"""Exception hierarchy shared by the engine and the command line."""


class EngineError(Exception):
    """Base class for computation errors (CLI exit code 3)."""


class MalformedPresentationError(EngineError, ValueError):
    pass


class PresentationMismatchError(EngineError, ValueError):
    pass


class NotInvertibleError(EngineError, ArithmeticError):
    pass


class GroupError(EngineError, ValueError):
    pass


class GroupOrderExceeded(GroupError):
    pass


class ModelError(EngineError, ValueError):
    pass


class UnsupportedError(EngineError, ValueError):
    pass
