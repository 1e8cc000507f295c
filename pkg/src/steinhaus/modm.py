"""Balance scans modulo m: arithmetic progressions and an interlaced sequence.

For odd m, the triangle on an arithmetic progression with invertible common
difference is balanced whenever its size is 0 or -1 mod q, where q is m
times the multiplicative order of 2^m mod m; the orbit of such a
progression is q-periodic.  A second family interlaces three arithmetic
progressions; its orbit mod m has period 6m and *contains* balanced
triangles of every size divisible by m and every size -1 mod 3m, though not
necessarily anchored at the origin, so those claims are checked by scanning
positions across the fundamental domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

from .core import ResidueTuple, Triangle, Orientation, build_steinhaus, is_balanced
from .errors import InvalidSpec
from .orbits import derive_tuple


def multiplicative_order(a: int, m: int) -> int:
    a %= m
    if m < 2 or gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    value = a
    order = 1
    while value != 1:
        value = value * a % m
        order += 1
    return order


@dataclass(frozen=True)
class ApFamilySpec:
    """Arithmetic progression start + j*difference mod an odd modulus."""

    modulus: int
    common_difference: int = 1
    start: int = 0

    def __post_init__(self) -> None:
        if self.modulus < 3 or self.modulus % 2 == 0:
            raise InvalidSpec(f"modulus must be odd and >= 3, got {self.modulus}")
        if gcd(self.common_difference, self.modulus) != 1:
            raise InvalidSpec(
                f"difference {self.common_difference} is not invertible mod {self.modulus}"
            )

    @property
    def order_factor(self) -> int:
        return multiplicative_order(pow(2, self.modulus, self.modulus), self.modulus)

    @property
    def period(self) -> int:
        return self.order_factor * self.modulus

    def sequence_tuple(self, length: int) -> ResidueTuple:
        m, d, c = self.modulus, self.common_difference, self.start
        return ResidueTuple(m, tuple((c + j * d) % m for j in range(length)))

    def claimed_sizes(self, n_max: int) -> list[int]:
        q = self.period
        return [n for n in range(1, n_max + 1) if n % q == 0 or n % q == q - 1]


class ScanRow(NamedTuple):
    n: int
    balanced: bool
    spread: int


def ap_balanced_scan(spec: ApFamilySpec, n_max: int) -> list[ScanRow]:
    """Balance of the triangle on the first n progression terms for every
    n <= n_max; raises if any size 0 or -1 mod the period is unbalanced."""
    rows = []
    for n in range(1, n_max + 1):
        result = is_balanced(build_steinhaus(spec.sequence_tuple(n)))
        rows.append(ScanRow(n, result.balanced, result.spread))
    claimed = set(spec.claimed_sizes(n_max))
    for row in rows:
        if row.n in claimed and not row.balanced:
            raise AssertionError(
                f"size {row.n} should be balanced mod {spec.modulus} (spread {row.spread})"
            )
    return rows


def orbit_period_check_mod_m(x: ResidueTuple, q: int) -> bool:
    """True when q derivation steps return the length-q tuple to itself."""
    if len(x) != q:
        raise ValueError("tuple length must equal the candidate period")
    row = x
    for _ in range(q):
        row = derive_tuple(row)
    return row == x


def interlaced_entry(j: int, m: int) -> int:
    """Entry j of the interlacing of three arithmetic progressions:
    positions 3k, 3k+1, 3k+2 carry k, -1-2k, 1+k mod m."""
    k, t = divmod(j, 3)
    if t == 0:
        return k % m
    if t == 1:
        return (-1 - 2 * k) % m
    return (1 + k) % m


def interlaced_tuple(m: int, length: int, start: int = 0) -> ResidueTuple:
    return ResidueTuple(m, tuple(interlaced_entry(start + j, m) for j in range(length)))


def _interlaced_orbit_rows(m: int) -> list[tuple[int, ...]]:
    """The 6m rows of the interlaced orbit's fundamental domain mod m."""
    q = 6 * m
    row = interlaced_tuple(m, q)
    rows = [row.entries]
    for _ in range(q - 1):
        row = derive_tuple(row)
        rows.append(row.entries)
    if derive_tuple(row).entries != rows[0]:
        raise AssertionError(f"interlaced orbit mod {m} is not {q}-periodic")
    return rows


def interlaced_sequence_check(m: int, n: int, i0: int = 0, j0: int = 0):
    """Balance of the size-n triangle at orbit position (i0, j0) of the
    interlaced sequence mod m."""
    if m < 3 or m % 2 == 0:
        raise InvalidSpec(f"modulus must be odd and >= 3, got {m}")
    q = 6 * m
    row = interlaced_tuple(m, q)
    for _ in range(i0 % q):
        row = derive_tuple(row)
    rows = []
    for i in range(n):
        rows.append(tuple(row.entries[(j0 + j) % q] for j in range(i, n)))
        row = derive_tuple(row)
    return is_balanced(Triangle(Orientation.STEINHAUS, m, tuple(rows)))


class SizeWitness(NamedTuple):
    n: int
    found: bool
    position: tuple[int, int] | None
    spread: int  # spread at the witness, or the best spread seen


def interlaced_scan(
    m: int, n_max: int, kind: Orientation = Orientation.STEINHAUS
) -> list[SizeWitness]:
    """For each size up to n_max, search the 6m-by-6m fundamental domain of
    the interlaced orbit for a balanced triangle of that size.

    Growing the triangle by one row or column updates per-residue counts
    incrementally, so one sweep per position covers all sizes.
    """
    if m < 3 or m % 2 == 0:
        raise InvalidSpec(f"modulus must be odd and >= 3, got {m}")
    q = 6 * m
    rows = _interlaced_orbit_rows(m)
    # per-residue prefix sums along rows and columns
    row_pref = [[[0] * (q + 1) for _ in range(m)] for _ in range(q)]
    col_pref = [[[0] * (q + 1) for _ in range(m)] for _ in range(q)]
    for i in range(q):
        for j in range(q):
            value = rows[i][j]
            for x in range(m):
                row_pref[i][x][j + 1] = row_pref[i][x][j] + (value == x)
                col_pref[j][x][i + 1] = col_pref[j][x][i] + (value == x)

    def segment(pref: list[int], start: int, length: int) -> int:
        full, rest = divmod(length, q)
        start %= q
        count = full * pref[q]
        end = start + rest
        if end <= q:
            count += pref[end] - pref[start]
        else:
            count += pref[q] - pref[start] + pref[end - q]
        return count

    best: list[tuple[int, tuple[int, int] | None]] = [(n_max + 2, None)] * (n_max + 1)
    for i0 in range(q):
        for j0 in range(q):
            counts = [0] * m
            for n in range(1, n_max + 1):
                if kind is Orientation.STEINHAUS:
                    prefs = col_pref[(j0 + n - 1) % q]
                    anchor = i0
                else:
                    prefs = row_pref[(i0 + n - 1) % q]
                    anchor = j0
                for x in range(m):
                    counts[x] += segment(prefs[x], anchor, n)
                spread = max(counts) - min(counts)
                if spread < best[n][0]:
                    best[n] = (spread, (i0, j0))
    return [
        SizeWitness(n, best[n][0] <= 1, best[n][1] if best[n][0] <= 1 else None, best[n][0])
        for n in range(1, n_max + 1)
    ]


def interlaced_claimed_sizes(
    m: int, n_max: int, kind: Orientation = Orientation.STEINHAUS
) -> list[int]:
    """Sizes the interlaced orbit is claimed to realize: multiples of m and
    sizes -1 mod 3m for Steinhaus; multiples of 3m for Pascal (the other
    Pascal congruence is left unresolved)."""
    if kind is Orientation.STEINHAUS:
        return [
            n
            for n in range(1, n_max + 1)
            if n % m == 0 or n % (3 * m) == 3 * m - 1
        ]
    return [n for n in range(1, n_max + 1) if n % (3 * m) == 0]
