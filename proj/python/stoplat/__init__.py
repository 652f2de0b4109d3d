"""Stopping times on finite filtered spaces.

Every function takes an instance in the line-oriented text format used by
the ``stoplat`` command line tool.
"""

from ._stoplat import (
    CapExceeded,
    ParseError,
    __version__,
    check,
    decompose,
    hunt,
    interpolate,
    minorant,
    run,
    selftest,
)

__all__ = [
    "CapExceeded",
    "ParseError",
    "__version__",
    "check",
    "decompose",
    "hunt",
    "interpolate",
    "minorant",
    "run",
    "selftest",
]
