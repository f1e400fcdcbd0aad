"""Exception types shared across the package."""


class ShapeError(ValueError):
    """A term or diagram is structurally malformed.

    Raised for arity mismatches in sequential composition, read-back of a
    term that does not have the constructed layout, plugging effects on
    wires that do not exist, and similar structural problems.  The message
    names the offending sub-term or slot.
    """


class ResourceLimitError(RuntimeError):
    """A dense computation would exceed the configured wire/qubit cap."""
