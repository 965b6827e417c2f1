"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class SkewCodesError(Exception):
    exit_code = 1
    kind = "error"


class DescriptorError(SkewCodesError, ValueError):
    """Malformed JSON descriptor or field-element encoding."""

    exit_code = 2
    kind = "parse"


class PreconditionError(SkewCodesError, ValueError):
    exit_code = 3
    kind = "precondition"


class EnumerationCapError(SkewCodesError):
    """An exhaustive computation would exceed the configured enumeration cap."""

    exit_code = 4
    kind = "cap"


class InvariantViolation(SkewCodesError):
    """A computed object failed one of its certified invariants."""

    exit_code = 5
    kind = "invariant-violation"
