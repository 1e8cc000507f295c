"""Exhaustive censuses of small binary triangles: totals, averages, maxima.

Both censuses enumerate every triangle of a given size (2^n Steinhaus
seeds, 2^(2n-1) Pascal side pairs), so they are capped; rows are packed as
int bitmasks and derived with shift/xor.
"""

from __future__ import annotations

from functools import lru_cache

from .core import Orientation
from .errors import TooLarge

STEINHAUS_CENSUS_LIMIT = 16
PASCAL_CENSUS_LIMIT = 10


def triangle_count(n: int, kind: Orientation) -> int:
    return 1 << n if kind is Orientation.STEINHAUS else 1 << (2 * n - 1)


def _check_bounds(n: int, kind: Orientation) -> None:
    if n < 1:
        raise ValueError("census size must be positive")
    limit = (
        STEINHAUS_CENSUS_LIMIT if kind is Orientation.STEINHAUS else PASCAL_CENSUS_LIMIT
    )
    if n > limit:
        raise TooLarge(f"census of size {n} exceeds the bound {limit}")


@lru_cache(maxsize=None)
def _steinhaus_census(n: int) -> tuple[int, int]:
    total = 0
    best = 0
    for seed in range(1 << n):
        ones = 0
        row = seed
        width = n
        while width:
            ones += row.bit_count()
            row = (row ^ (row >> 1)) & ((1 << (width - 1)) - 1)
            width -= 1
        total += ones
        if ones > best:
            best = ones
    return total, best


@lru_cache(maxsize=None)
def _pascal_census(n: int) -> tuple[int, int]:
    total = 0
    best = 0
    for left in range(1 << n):
        apex = left & 1
        for rest in range(1 << (n - 1)):
            right = apex | (rest << 1)
            row = apex
            ones = apex
            for t in range(1, n):
                row = (row ^ (row << 1)) & ((1 << t) - 2)
                row |= (left >> t) & 1
                row |= ((right >> t) & 1) << t
                ones += row.bit_count()
            total += ones
            if ones > best:
                best = ones
    return total, best


def average_census(n: int, kind: Orientation) -> int:
    """Total number of ones over all binary triangles of size n; dividing by
    the triangle count gives exactly half the cell count."""
    _check_bounds(n, kind)
    census = _steinhaus_census if kind is Orientation.STEINHAUS else _pascal_census
    return census(n)[0]


def extremal_ones_scan(n: int, kind: Orientation) -> int:
    """Maximum number of ones over all binary triangles of size n."""
    _check_bounds(n, kind)
    census = _steinhaus_census if kind is Orientation.STEINHAUS else _pascal_census
    return census(n)[1]


def steinhaus_max_ones(n: int) -> int:
    """Closed form ceil(2/3 * n(n+1)/2), attained by the length-n initial
    segment of the 3-periodic sequence 110110..."""
    cells = n * (n + 1) // 2
    return -(-2 * cells // 3)


def pascal_max_ones(n: int) -> int:
    """Steinhaus maximum plus a correction depending on n mod 3, with the
    two exceptional sizes 1 and 8."""
    if n == 1:
        extra = 0
    elif n == 8:
        extra = 3
    elif n % 3 == 1:
        extra = 2
    else:
        extra = 1
    return steinhaus_max_ones(n) + extra
