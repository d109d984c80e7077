"""Error types shared across the package.

All of them subclass ValueError so that callers who do not care about the
distinction can catch a single type; the CLI maps each class to its own
exit code.
"""


class InputError(ValueError):
    """Invalid argument values or incompatible shapes."""


class ParseError(ValueError):
    """Malformed input file (bad cell, ragged rows, duplicate names)."""


class DegenerateDataError(ValueError):
    """Data admits no meaningful answer (e.g. all samples identical)."""
