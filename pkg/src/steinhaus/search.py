"""Search for infinite families of balanced triangles inside periodic orbits.

A triangle family anchored at position (i0, j0) with remainder r consists of
the triangles of size kp + r for k = 0, 1, 2, ...  Such a family is balanced
for every k exactly when three blocks are balanced: the corner triangle of
size r, the band of cells added by one period step (an even block, so its
two counts must be equal), and the p-by-p period itself.  This holds only
when p is divisible by 4.  The module scans all (position, remainder) pairs
per orbit class, collects the achievable remainders with witnesses, and
emits certificates that an independent oracle can re-verify by direct
extraction and counting.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    MultiplicityTable,
    Orientation,
    ResidueTuple,
    Triangle,
    is_balanced,
    multiplicity,
)
from .errors import PeriodNotDivisibleBy4, UnbalancedPeriod
from .orbits import PeriodGrid, build_period_grid
from .symmetry import OrbitClass, partition_classes


def extract_steinhaus_block(grid: PeriodGrid, i0: int, j0: int, n: int) -> Triangle:
    """The size-n Steinhaus triangle whose principal vertex sits at orbit
    position (i0, j0): cells (i0+i, j0+j) for 0 <= i <= j <= n-1."""
    if n < 0:
        raise ValueError("size must be non-negative")
    p = grid.p
    rows = []
    for i in range(n):
        bits = grid.rows[(i0 + i) % p]
        rows.append(tuple((bits >> ((j0 + j) % p)) & 1 for j in range(i, n)))
    return Triangle(Orientation.STEINHAUS, 2, tuple(rows))


def extract_pascal_block(grid: PeriodGrid, i0: int, j0: int, n: int) -> Triangle:
    """The size-n generalized Pascal triangle with apex at orbit position
    (i0, j0): cells (i0+i, j0+j) for 0 <= j <= i <= n-1."""
    if n < 0:
        raise ValueError("size must be non-negative")
    p = grid.p
    rows = []
    for i in range(n):
        bits = grid.rows[(i0 + i) % p]
        rows.append(tuple((bits >> ((j0 + j) % p)) & 1 for j in range(i + 1)))
    return Triangle(Orientation.PASCAL, 2, tuple(rows))


def generator_tuple(x: ResidueTuple, i0: int, j0: int) -> ResidueTuple:
    """The p-tuple read along orbit row i0 starting at column j0; its
    periodic extension generates the Steinhaus triangles anchored there."""
    grid = build_period_grid(x)
    return ResidueTuple(2, tuple(grid.cell(i0, j0 + j) for j in range(grid.p)))


def pascal_generator_tuples(
    x: ResidueTuple, i0: int, j0: int
) -> tuple[ResidueTuple, ResidueTuple]:
    """Left and right side tuples of the Pascal triangles with apex at
    (i0, j0): the column below the apex and the diagonal to its lower right."""
    grid = build_period_grid(x)
    left = ResidueTuple(2, tuple(grid.cell(i0 + i, j0) for i in range(grid.p)))
    right = ResidueTuple(2, tuple(grid.cell(i0 + i, j0 + i) for i in range(grid.p)))
    return left, right


def dual_position(i0: int, j0: int, r: int, p: int) -> tuple[int, int, int]:
    """Pascal family position dual to the Steinhaus family at (i0, j0, r):
    (i0 + r + 1, j0 + r, p - 1 - r), returned without mod-p reduction."""
    if not 0 <= r < p:
        raise ValueError("remainder must lie in 0..p-1")
    return i0 + r + 1, j0 + r, p - 1 - r


def steinhaus_dual_position(i0: int, j0: int, r: int, p: int) -> tuple[int, int, int]:
    """Inverse direction: the Steinhaus family dual to the Pascal family at
    (i0, j0, r) is anchored at (i0 + r - p, j0 + r + 1 - p, p - 1 - r)."""
    if not 0 <= r < p:
        raise ValueError("remainder must lie in 0..p-1")
    return i0 + r - p, j0 + r + 1 - p, p - 1 - r


@dataclass(frozen=True)
class FamilyCertificate:
    """Witness that the triangles of size kp + r anchored at ``position``
    are balanced for every k >= 0, with the three block multiplicities."""

    kind: Orientation
    generator: ResidueTuple
    position: tuple[int, int]
    remainder: int
    corner: MultiplicityTable  # size-r triangle at the anchor
    band: MultiplicityTable    # one-period difference block
    period: MultiplicityTable  # the p-by-p period

    def __post_init__(self) -> None:
        p = len(self.generator)
        r = self.remainder
        if p % 4:
            raise PeriodNotDivisibleBy4(f"period {p} is not divisible by 4")
        if not 0 <= r < p:
            raise ValueError("remainder must lie in 0..p-1")
        if self.corner.total != r * (r + 1) // 2:
            raise ValueError("corner block has the wrong cardinality")
        if self.band.total != p * r + p * (p + 1) // 2:
            raise ValueError("band block has the wrong cardinality")
        if self.period.total != p * p:
            raise ValueError("period block has the wrong cardinality")
        if self.corner.spread > 1 or self.band.spread != 0 or self.period.spread != 0:
            raise ValueError("certificate blocks are not balanced")

    @property
    def p(self) -> int:
        return len(self.generator)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "generator": str(self.generator),
            "position": list(self.position),
            "remainder": self.remainder,
            "corner_counts": list(self.corner.counts),
            "band_counts": list(self.band.counts),
            "period_counts": list(self.period.counts),
        }


def _period_multiplicity(x: ResidueTuple) -> MultiplicityTable:
    table = build_period_grid(x).multiplicity()
    if table.spread != 0:
        raise UnbalancedPeriod(f"period of {x} is not balanced")
    return table


def check_steinhaus_family(
    x: ResidueTuple, i0: int, j0: int, r: int
) -> FamilyCertificate | None:
    """Accept iff the size-r corner triangle at (i0, j0) is balanced and the
    cells added by growing it to size p + r split evenly; returns the
    certificate on acceptance, None on rejection."""
    p = len(x)
    if p % 4:
        raise PeriodNotDivisibleBy4(f"period {p} is not divisible by 4")
    if not 0 <= r < p:
        raise ValueError("remainder must lie in 0..p-1")
    period = _period_multiplicity(x)
    grid = build_period_grid(x)
    corner = multiplicity(extract_steinhaus_block(grid, i0, j0, r))
    if corner.spread > 1:
        return None
    band = multiplicity(extract_steinhaus_block(grid, i0, j0, p + r)) - corner
    if band.spread != 0:
        return None
    return FamilyCertificate(
        Orientation.STEINHAUS, x, (i0 % p, j0 % p), r, corner, band, period
    )


def check_pascal_family(
    x: ResidueTuple, i0: int, j0: int, r: int
) -> FamilyCertificate | None:
    """Pascal counterpart: the size-r apex triangle must be balanced and the
    band (the size p+r triangle minus its lower-right size-r corner, i.e.
    the cells in the first p columns) must split evenly."""
    p = len(x)
    if p % 4:
        raise PeriodNotDivisibleBy4(f"period {p} is not divisible by 4")
    if not 0 <= r < p:
        raise ValueError("remainder must lie in 0..p-1")
    period = _period_multiplicity(x)
    grid = build_period_grid(x)
    corner = multiplicity(extract_pascal_block(grid, i0, j0, r))
    if corner.spread > 1:
        return None
    band = multiplicity(extract_pascal_block(grid, i0, j0, p + r)) - corner
    if band.spread != 0:
        return None
    return FamilyCertificate(
        Orientation.PASCAL, x, (i0 % p, j0 % p), r, corner, band, period
    )


def check_family(
    x: ResidueTuple, i0: int, j0: int, r: int, kind: Orientation
) -> FamilyCertificate | None:
    if kind is Orientation.STEINHAUS:
        return check_steinhaus_family(x, i0, j0, r)
    return check_pascal_family(x, i0, j0, r)


def oracle_verify_family(cert: FamilyCertificate, max_multiplier: int) -> bool:
    """Independent check of a certificate: extract the triangle of size
    kp + r for every k up to max_multiplier and count residues directly."""
    if max_multiplier < 1:
        raise ValueError("need at least one multiplier")
    grid = build_period_grid(cert.generator)
    i0, j0 = cert.position
    extract = (
        extract_steinhaus_block
        if cert.kind is Orientation.STEINHAUS
        else extract_pascal_block
    )
    for k in range(max_multiplier + 1):
        triangle = extract(grid, i0, j0, k * grid.p + cert.remainder)
        if not is_balanced(triangle).balanced:
            return False
    return True


class _GridCounter:
    """Prefix sums over the period grid for O(1) wrapped segment counts."""

    def __init__(self, grid: PeriodGrid):
        p = grid.p
        self.p = p
        cells = grid.cells
        self.row_pref = [[0] * (p + 1) for _ in range(p)]
        self.col_pref = [[0] * (p + 1) for _ in range(p)]
        for i in range(p):
            for j in range(p):
                self.row_pref[i][j + 1] = self.row_pref[i][j] + cells[i][j]
                self.col_pref[j][i + 1] = self.col_pref[j][i] + cells[i][j]

    def _segment(self, pref: list[int], start: int, length: int) -> int:
        p = self.p
        full, rest = divmod(length, p)
        start %= p
        count = full * pref[p]
        end = start + rest
        if end <= p:
            count += pref[end] - pref[start]
        else:
            count += pref[p] - pref[start] + pref[end - p]
        return count

    def column_ones(self, j: int, i_start: int, length: int) -> int:
        return self._segment(self.col_pref[j % self.p], i_start, length)

    def row_ones(self, i: int, j_start: int, length: int) -> int:
        return self._segment(self.row_pref[i % self.p], j_start, length)

    def steinhaus_ones_profile(self, i0: int, j0: int, n_max: int) -> list[int]:
        """ones[n] = one-count of the size-n Steinhaus triangle at (i0, j0);
        growing the size appends one column segment."""
        ones = [0] * (n_max + 1)
        for n in range(1, n_max + 1):
            ones[n] = ones[n - 1] + self.column_ones(j0 + n - 1, i0, n)
        return ones

    def pascal_ones_profile(self, i0: int, j0: int, n_max: int) -> list[int]:
        """Same for Pascal triangles; growing the size appends one row."""
        ones = [0] * (n_max + 1)
        for n in range(1, n_max + 1):
            ones[n] = ones[n - 1] + self.row_ones(i0 + n - 1, j0, n)
        return ones


@lru_cache(maxsize=64)
def _cached_counter(x: ResidueTuple) -> _GridCounter:
    return _GridCounter(build_period_grid(x))


def family_accepts(
    x: ResidueTuple, i0: int, j0: int, r: int, kind: Orientation = Orientation.STEINHAUS
) -> bool:
    """Acceptance predicate of check_steinhaus_family / check_pascal_family,
    computed from one-count profiles instead of full extraction."""
    p = len(x)
    if p % 4:
        raise PeriodNotDivisibleBy4(f"period {p} is not divisible by 4")
    if not 0 <= r < p:
        raise ValueError("remainder must lie in 0..p-1")
    _period_multiplicity(x)
    counter = _cached_counter(x)
    profile = (
        counter.steinhaus_ones_profile
        if kind is Orientation.STEINHAUS
        else counter.pascal_ones_profile
    )
    ones = profile(i0 % p, j0 % p, p + r)
    corner_cells = r * (r + 1) // 2
    if abs(corner_cells - 2 * ones[r]) > 1:
        return False
    return p * r + p * (p + 1) // 2 == 2 * (ones[p + r] - ones[r])


@dataclass(frozen=True)
class RemainderSet:
    """Remainders r admitting a balanced family for one class, with the
    first accepting position per remainder (scan order: i0, then j0, then r)."""

    class_rep: ResidueTuple
    kind: Orientation
    p: int
    witnesses: tuple[tuple[int, int, int], ...]  # (remainder, i0, j0)

    @property
    def remainders(self) -> tuple[int, ...]:
        return tuple(w[0] for w in self.witnesses)

    def witness(self, r: int) -> tuple[int, int] | None:
        for remainder, i0, j0 in self.witnesses:
            if remainder == r:
                return i0, j0
        return None

    @property
    def full(self) -> bool:
        return len(self.witnesses) == self.p

    def __len__(self) -> int:
        return len(self.witnesses)


def remainder_set(
    x: ResidueTuple, kind: Orientation = Orientation.STEINHAUS
) -> RemainderSet:
    """Scan all positions (i0, j0) in the fundamental domain and all
    remainders r, keeping the first witness per achievable remainder."""
    p = len(x)
    if p % 4:
        raise PeriodNotDivisibleBy4(f"period {p} is not divisible by 4")
    _period_multiplicity(x)
    counter = _GridCounter(build_period_grid(x))
    profile = (
        counter.steinhaus_ones_profile
        if kind is Orientation.STEINHAUS
        else counter.pascal_ones_profile
    )
    band_cells = [p * r + p * (p + 1) // 2 for r in range(p)]
    found: dict[int, tuple[int, int]] = {}
    for i0 in range(p):
        for j0 in range(p):
            ones = profile(i0, j0, 2 * p - 1)
            for r in range(p):
                if r in found:
                    continue
                corner_cells = r * (r + 1) // 2
                corner_ones = ones[r]
                if abs(corner_cells - 2 * corner_ones) > 1:
                    continue
                if band_cells[r] != 2 * (ones[p + r] - corner_ones):
                    continue
                found[r] = (i0, j0)
            if len(found) == p:
                break
        if len(found) == p:
            break
    witnesses = tuple((r, *found[r]) for r in sorted(found))
    return RemainderSet(x, kind, p, witnesses)


def balanced_period_classes(p: int) -> tuple[OrbitClass, ...]:
    """Orbit classes whose p-by-p period has equally many zeroes and ones."""
    if p % 4:
        raise PeriodNotDivisibleBy4(f"period {p} is not divisible by 4")
    return tuple(
        cls
        for cls in partition_classes(p)
        if build_period_grid(cls.representative).multiplicity().spread == 0
    )


@dataclass(frozen=True)
class ClassFamilySearch:
    index: int  # 1-based position among the balanced-period classes
    class_rep: ResidueTuple
    steinhaus: RemainderSet
    pascal: RemainderSet


@dataclass(frozen=True)
class SearchReport:
    p: int
    classes: tuple[ClassFamilySearch, ...]

    def remainder_counts(self, kind: Orientation) -> tuple[int, ...]:
        pick = (lambda c: c.steinhaus) if kind is Orientation.STEINHAUS else (lambda c: c.pascal)
        return tuple(len(pick(c)) for c in self.classes)

    def full_classes(self, kind: Orientation) -> tuple[int, ...]:
        pick = (lambda c: c.steinhaus) if kind is Orientation.STEINHAUS else (lambda c: c.pascal)
        return tuple(c.index for c in self.classes if pick(c).full)


def _search_one_class(args: tuple[ResidueTuple, int]) -> tuple[RemainderSet, RemainderSet]:
    rep, _p = args
    return (
        remainder_set(rep, Orientation.STEINHAUS),
        remainder_set(rep, Orientation.PASCAL),
    )


def full_search(p: int, jobs: int = 1) -> SearchReport:
    """Remainder sets (both kinds) for every balanced-period class of the
    given period.  ``jobs`` > 1 splits the classes across worker processes;
    the report is identical either way."""
    classes = balanced_period_classes(p)
    tasks = [(cls.representative, p) for cls in classes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_one_class, tasks))
    else:
        results = [_search_one_class(task) for task in tasks]
    entries = tuple(
        ClassFamilySearch(k + 1, cls.representative, st, pa)
        for k, (cls, (st, pa)) in enumerate(zip(classes, results))
    )
    return SearchReport(p, entries)


def balanced_triangle_of_size(
    report: SearchReport, n: int, kind: Orientation
) -> Triangle:
    """A balanced triangle of size n taken from the first class of the
    report whose remainder set is full; verified by direct count."""
    if n < 1:
        raise ValueError("size must be positive")
    p = report.p
    r = n % p
    for entry in report.classes:
        rset = entry.steinhaus if kind is Orientation.STEINHAUS else entry.pascal
        if not rset.full:
            continue
        i0, j0 = rset.witness(r)
        grid = build_period_grid(entry.class_rep)
        extract = (
            extract_steinhaus_block
            if kind is Orientation.STEINHAUS
            else extract_pascal_block
        )
        triangle = extract(grid, i0, j0, n)
        result = is_balanced(triangle)
        if not result.balanced:
            raise AssertionError(
                f"family witness produced an unbalanced size-{n} triangle"
            )
        return triangle
    raise ValueError(f"report for p={p} has no class with a full remainder set")
