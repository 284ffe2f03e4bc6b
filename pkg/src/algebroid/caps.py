"""Degree caps shared by every exhaustive search."""

import os

DEFAULT_DEGREE_CAP = 4


class DegreeCapError(ValueError):
    pass


def degree_cap(value=None):
    """An explicit value wins, then ALGEBROID_DEGREE_CAP, then the default."""
    if value is not None:
        return int(value)
    env = os.environ.get("ALGEBROID_DEGREE_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DegreeCapError(f"ALGEBROID_DEGREE_CAP is not an integer: {env!r}") from None
    return DEFAULT_DEGREE_CAP


def check_degree(requested, cap=None):
    cap = degree_cap(cap)
    if requested > cap:
        raise DegreeCapError(f"degree {requested} exceeds the cap {cap}")
    return cap
