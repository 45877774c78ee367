"""Exception hierarchy shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class MissingFile(ToolkitError):
    pass


class BadToken(ToolkitError):
    pass


class LengthMismatch(ToolkitError):
    pass


class DuplicateAnnotation(ToolkitError):
    pass


class OutOfRange(ToolkitError):
    pass


class EmptyAnnotations(ToolkitError):
    pass


class DegenerateConsensus(ToolkitError):
    pass


class MissingAnnotation(ToolkitError):
    pass


class EmptyTrainingSet(ToolkitError):
    pass


class DimensionMismatch(ToolkitError):
    pass


class NotAPeak(ToolkitError):
    pass


class MissingConsensus(ToolkitError):
    pass
