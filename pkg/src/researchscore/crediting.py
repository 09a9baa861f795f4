"""Author-credit allocation under integer, fractional and position-weighted counting."""
from __future__ import annotations

from enum import Enum

from .model import PublicationRecord


class CountingScheme(str, Enum):
    INTEGER = "integer"
    FRACTIONAL = "fractional"
    # position-weighted extensions; not used by default anywhere
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    HARMONIC = "harmonic"
    FIRST_AUTHOR = "first_author"

    @classmethod
    def parse(cls, value) -> "CountingScheme":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).replace("-", "_"))
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown counting scheme {value!r} (choose from {choices})") from None


DEFAULT_SCHEMES = (CountingScheme.INTEGER, CountingScheme.FRACTIONAL)


def allocate_credits(scheme, author_count: int) -> list[float]:
    """Credit for each byline position 1..author_count.

    >>> [round(c, 4) for c in allocate_credits("harmonic", 3)]
    [0.5455, 0.2727, 0.1818]
    """
    scheme = CountingScheme.parse(scheme)
    n = author_count
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"author_count must be a positive integer, got {author_count!r}")

    if scheme is CountingScheme.INTEGER:
        return [1.0] * n
    if scheme is CountingScheme.FRACTIONAL:
        return [1.0 / n] * n
    if scheme is CountingScheme.ARITHMETIC:
        total = n * (n + 1) / 2
        return [(n + 1 - i) / total for i in range(1, n + 1)]
    if scheme is CountingScheme.GEOMETRIC:
        # 2**(n-i) / (2**n - 1) rewritten so large bylines do not overflow
        norm = 1.0 - 2.0 ** -n
        return [2.0 ** -i / norm for i in range(1, n + 1)]
    if scheme is CountingScheme.HARMONIC:
        h = sum(1.0 / k for k in range(1, n + 1))
        return [1.0 / (i * h) for i in range(1, n + 1)]
    if scheme is CountingScheme.FIRST_AUTHOR:
        return [1.0] + [0.0] * (n - 1)
    raise AssertionError(scheme)


def credit_at(scheme, author_count: int, position: int) -> float:
    """Credit at one 1-based position, without building the whole vector."""
    scheme = CountingScheme.parse(scheme)
    if not 1 <= position <= author_count:
        raise ValueError(f"position {position} outside 1..{author_count}")
    if scheme is CountingScheme.INTEGER:
        return 1.0
    if scheme is CountingScheme.FRACTIONAL:
        return 1.0 / author_count
    return allocate_credits(scheme, author_count)[position - 1]


def credit_for_member(scheme, pub: PublicationRecord, researcher_id: str) -> float:
    position = pub.position_of(researcher_id)
    if position is None:
        raise ValueError(f"{researcher_id!r} is not an author of {pub.pub_id!r}")
    return credit_at(scheme, pub.author_count, position)
