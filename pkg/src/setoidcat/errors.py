"""Exception hierarchy.

Malformed input (exit code 2 at the command line) is kept apart from
law failures, which are reported through :class:`setoidcat.report.Report`
rather than raised.
"""


class SetoidError(Exception):
    pass


class MalformedInput(SetoidError, ValueError):
    pass


class IncompleteFamily(MalformedInput):
    """A transport is missing for a pair of related index elements."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"missing transport for related pair {pair[0]!r} -> {pair[1]!r}")


class DomainMismatch(SetoidError, ValueError):
    pass


class PreconditionError(SetoidError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class CompatibilityError(SetoidError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"cocone not compatible with transports at {witness!r}")


class ExtensionalityError(SetoidError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"subsetoid family not extensional at {pair!r}")


class InvalidArrow(SetoidError, ValueError):
    pass
