"""Exception hierarchy shared by every module of the package."""


class BoxdomError(Exception):
    pass


class MalformedGraph6(BoxdomError, ValueError):
    pass


class Oversize(BoxdomError, ValueError):
    pass


class IndexOutOfRange(BoxdomError, IndexError):
    pass


class UniverseMismatch(BoxdomError, ValueError):
    pass


class NotInSet(BoxdomError, ValueError):
    pass


class NotDominating(BoxdomError, ValueError):
    pass


class NotMinimum(BoxdomError, ValueError):
    pass


class ConfigError(BoxdomError, ValueError):
    pass


class HypothesisViolated(BoxdomError, ValueError):
    """The input does not satisfy the premises of the statement being replayed."""


class InvariantViolation(BoxdomError, AssertionError):
    """A proved statement failed on a concrete instance; this is a bug flag."""


class StepFailed(InvariantViolation):
    def __init__(self, message, report=None, instance=None, dump_path=None):
        super().__init__(message)
        self.report = report
        self.instance = instance
        self.dump_path = dump_path


class IoError(BoxdomError, OSError):
    pass
