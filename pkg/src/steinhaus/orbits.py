"""Periodic orbits of the pairwise-sum derivation rule.

Deriving a p-periodic sequence yields another p-periodic sequence, so a
p-tuple generates a doubly indexed orbit whose rows are its iterated
derivatives.  The orbit is *p-periodic* (vertically as well) exactly when
the tuple lies in the kernel over GF(2) of the circulant matrix of binomial
coefficients C(p, .); the p-by-p fundamental domain of such an orbit is the
PeriodGrid.  Bit-level helpers pack modulus-2 tuples LSB-first into ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .core import MultiplicityTable, ResidueTuple
from .errors import EmptyTuple, NotPeriodic, TooLarge

KERNEL_ENUM_LIMIT = 20  # kernel dimension above which span enumeration is refused


def derive_tuple(x: ResidueTuple) -> ResidueTuple:
    """One derivation step on the period: entry j becomes x[j-1] + x[j] mod m."""
    if len(x) == 0:
        raise EmptyTuple("cannot derive an empty tuple")
    e, m = x.entries, x.modulus
    return ResidueTuple(m, tuple((e[j - 1] + e[j]) % m for j in range(len(e))))


def _rotl_bits(bits: int, p: int) -> int:
    return ((bits << 1) | (bits >> (p - 1))) & ((1 << p) - 1)


def _derive_bits(bits: int, p: int) -> int:
    return bits ^ _rotl_bits(bits, p)


def _reverse_bits(bits: int, p: int) -> int:
    out = 0
    for _ in range(p):
        out = (out << 1) | (bits & 1)
        bits >>= 1
    return out


def binomial_is_odd(n: int, k: int) -> bool:
    """C(n, k) is odd exactly when k is a submask of n."""
    return 0 <= k <= n and (k & n) == k


@lru_cache(maxsize=None)
def binomial_row_mod(n: int, m: int) -> tuple[int, ...]:
    """Row n of the Pascal triangle reduced mod m, built without bignums."""
    row = (1,)
    for _ in range(n):
        row = (1,) + tuple((row[k] + row[k + 1]) % m for k in range(len(row) - 1)) + (1 % m,)
    return row


@lru_cache(maxsize=65536)
def is_periodic_tuple(x: ResidueTuple) -> bool:
    """True when row p of the orbit of x equals row 0 (vertical period p)."""
    p = len(x)
    if p == 0:
        raise EmptyTuple("periodicity is undefined for an empty tuple")
    row = x
    for _ in range(p):
        row = derive_tuple(row)
    return row == x


def orbit_cell(x: ResidueTuple, i: int, j: int) -> int:
    """Cell (i, j) of the orbit generated by the periodic extension of x.

    Row i is expressed directly through row 0 via binomial coefficients:
    a(i, j) = sum_k C(i, k) * x[(j - k) mod p].  The row index is reduced
    mod p only when x is known to generate a p-periodic orbit.
    """
    if i < 0:
        raise ValueError("row index must be non-negative")
    p = len(x)
    if p == 0:
        raise EmptyTuple("orbit of an empty tuple is undefined")
    if i >= p and is_periodic_tuple(x):
        i %= p
    e, m = x.entries, x.modulus
    if m == 2:
        acc = 0
        for k in range(i + 1):
            if (k & i) == k:
                acc ^= e[(j - k) % p]
        return acc
    row = binomial_row_mod(i, m)
    return sum(c * e[(j - k) % p] for k, c in enumerate(row) if c) % m


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense matrix over GF(2); row i is an int with bit j = entry (i, j)."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        mask = (1 << self.cols) - 1
        if any(row & ~mask for row in self.rows):
            raise ValueError("row has bits beyond the declared column count")

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1


def wendt_matrix(p: int) -> Gf2Matrix:
    """The p-by-p circulant of binomial parities whose row 0 is
    (C(p,p), C(p,p-1), ..., C(p,1)) mod 2; row i is its cyclic shift by i."""
    if p < 1:
        raise ValueError("period must be positive")
    first = 0
    for j in range(p):
        if binomial_is_odd(p, p - j):
            first |= 1 << j
    mask = (1 << p) - 1
    rows = tuple(((first << i) | (first >> (p - i))) & mask for i in range(p))
    return Gf2Matrix(rows, p)


def gf2_rank(matrix: Gf2Matrix) -> int:
    return matrix.cols - len(gf2_kernel_basis(matrix))


def gf2_kernel_basis(matrix: Gf2Matrix) -> list[int]:
    """Null-space basis via row reduction, one vector per free column.

    Pivots are chosen leftmost-first and the pivot rows kept fully reduced,
    so the basis is reproducible; vector k has bit 1 at its free column.
    """
    pivots: dict[int, int] = {}
    for row in matrix.rows:
        x = row
        for c, prow in pivots.items():
            if (x >> c) & 1:
                x ^= prow
        if not x:
            continue
        c = (x & -x).bit_length() - 1
        for c2, prow in pivots.items():
            if (prow >> c) & 1:
                pivots[c2] = prow ^ x
        pivots[c] = x
    basis = []
    for free in range(matrix.cols):
        if free in pivots:
            continue
        v = 1 << free
        for pc, prow in pivots.items():
            if (prow >> free) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


@lru_cache(maxsize=None)
def periodic_tuple_bits(p: int) -> tuple[int, ...]:
    """All bitmasks of p-tuples generating p-periodic orbits (the kernel span)."""
    basis = gf2_kernel_basis(wendt_matrix(p))
    if len(basis) > KERNEL_ENUM_LIMIT:
        raise TooLarge(f"kernel dimension {len(basis)} exceeds {KERNEL_ENUM_LIMIT}")
    out = [0]
    value = 0
    for s in range(1, 1 << len(basis)):
        value ^= basis[(s & -s).bit_length() - 1]  # Gray-code walk of the span
        out.append(value)
    return tuple(out)


def enumerate_periodic_tuples(p: int) -> list[ResidueTuple]:
    """The 2^dim tuples whose orbits are p-periodic, in lexicographic order."""
    tuples = [ResidueTuple.from_bits(b, p) for b in periodic_tuple_bits(p)]
    tuples.sort(key=lambda t: t.entries)
    return tuples


@dataclass(frozen=True)
class PeriodGrid:
    """The p-by-p fundamental domain of a p-periodic orbit (modulus 2).

    rows[i] packs orbit row i LSB-first; any cell of the full orbit reduces
    into the grid by taking both indices mod p.
    """

    p: int
    rows: tuple[int, ...]

    def cell(self, i: int, j: int) -> int:
        return (self.rows[i % self.p] >> (j % self.p)) & 1

    def row_entries(self, i: int) -> tuple[int, ...]:
        bits = self.rows[i % self.p]
        return tuple((bits >> j) & 1 for j in range(self.p))

    @property
    def cells(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.row_entries(i) for i in range(self.p))

    def multiplicity(self) -> MultiplicityTable:
        ones = sum(row.bit_count() for row in self.rows)
        return MultiplicityTable(2, (self.p * self.p - ones, ones))

    def window_multiplicity(self, i0: int, j0: int) -> MultiplicityTable:
        """Multiplicity of the p-by-p window anchored at (i0, j0)."""
        ones = 0
        for i in range(self.p):
            for j in range(self.p):
                ones += self.cell(i0 + i, j0 + j)
        return MultiplicityTable(2, (self.p * self.p - ones, ones))

    def generator(self) -> ResidueTuple:
        return ResidueTuple.from_bits(self.rows[0], self.p)

    def to_json_dict(self) -> dict:
        return {"p": self.p, "cells": [list(self.row_entries(i)) for i in range(self.p)]}


@lru_cache(maxsize=512)
def build_period_grid(x: ResidueTuple) -> PeriodGrid:
    """Fundamental domain of the orbit of x; raises NotPeriodic when row p
    of the orbit differs from row 0."""
    if x.modulus != 2:
        raise ValueError("period grids are defined for modulus 2")
    p = len(x)
    if p == 0:
        raise EmptyTuple("cannot build a grid from an empty tuple")
    rows = []
    row = x.bits
    for _ in range(p):
        rows.append(row)
        row = _derive_bits(row, p)
    if row != rows[0]:
        raise NotPeriodic(f"{x} does not generate a {p}-periodic orbit")
    return PeriodGrid(p, tuple(rows))


class PreperiodReport(NamedTuple):
    preperiod: int
    period: int


def detect_preperiod(x: ResidueTuple) -> PreperiodReport:
    """First repetition among iterated derivatives of x.

    Returns the smallest i1 such that some later i2 repeats the i1-th
    derivative, together with the cycle length i2 - i1.  Termination is
    guaranteed: there are finitely many tuples of the given length.
    """
    if len(x) == 0:
        raise EmptyTuple("cannot iterate an empty tuple")
    seen: dict[ResidueTuple, int] = {}
    current = x
    index = 0
    while current not in seen:
        seen[current] = index
        current = derive_tuple(current)
        index += 1
    first = seen[current]
    return PreperiodReport(first, index - first)
