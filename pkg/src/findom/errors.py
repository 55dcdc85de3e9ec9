"""Exception hierarchy shared by all modules."""


class FindomError(Exception):
    """Base class for every error raised by the package."""


class NotAnElement(FindomError, ValueError):
    """A polynomial has support outside the region of a restricted ring."""


class NotUnit(FindomError, ValueError):
    """An element was required to be a unit but is not."""


class FlavorMismatch(FindomError, ValueError):
    pass


class WindowTooSmall(FindomError, ValueError):
    pass


class MarginExceeded(FindomError, ValueError):
    pass


class NotInKernel(FindomError, ValueError):
    pass


class NotIncident(FindomError, ValueError):
    pass


class IncidenceViolation(FindomError, ValueError):
    pass


class HomotopyInvalid(FindomError, ValueError):
    pass


class ShapeMismatch(FindomError, ValueError):
    pass


class InputError(FindomError, ValueError):
    """Malformed external input; ``location`` points at the offending field."""

    def __init__(self, message, location=""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
