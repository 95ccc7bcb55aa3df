"""Exception hierarchy shared by every module."""

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class PlumbingError(ValueError):
    """Malformed input or a violated precondition (CLI exit status 1)."""


class NonTerminationError(RuntimeError):
    """A step budget ran out before the iteration settled (CLI exit status 2)."""


class ArithmeticOverflowError(OverflowError):
    """A value left the signed 64-bit range (CLI exit status 2)."""


def checked(value: int) -> int:
    """Return ``value`` unchanged, or raise if it does not fit in int64."""
    if value > INT64_MAX or value < INT64_MIN:
        raise ArithmeticOverflowError(
            f"integer {value} exceeds the signed 64-bit range; input exceeds supported scale"
        )
    return value
