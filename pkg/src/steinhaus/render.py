"""Raster output: PBM/PPM images of orbits and balanced-triangle families.

Images are plain-text netpbm (P1 bitmaps for two residues, P3 pixmaps
otherwise), so outputs are diffable and byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import Orientation, ResidueTuple
from .errors import WindowTooLarge
from .orbits import derive_tuple
from .search import (
    FamilyCertificate,
    extract_pascal_block,
    extract_steinhaus_block,
)
from .orbits import build_period_grid

MAX_PIXELS = 16_000_000
OUTLINE_COLOR = (255, 0, 0)
BACKGROUND = (255, 255, 255)


@dataclass(frozen=True)
class RenderSpec:
    """Rendering parameters.

    window is ((i_lo, i_hi), (j_lo, j_hi)) in orbit coordinates, half-open;
    None means one fundamental domain.  overlays lists triangle outlines
    (kind, i0, j0, n) tinted onto orbit renders.  palette maps residues to
    RGB; None selects white-to-black defaults.
    """

    cell_size: int = 1
    palette: Mapping[int, tuple[int, int, int]] | None = None
    window: tuple[tuple[int, int], tuple[int, int]] | None = None
    overlays: tuple[tuple[Orientation, int, int, int], ...] = ()
    max_pixels: int = MAX_PIXELS

    def __post_init__(self) -> None:
        if self.cell_size < 1:
            raise ValueError("cell size must be at least 1")
        if self.window is not None:
            (i_lo, i_hi), (j_lo, j_hi) = self.window
            if i_hi <= i_lo or j_hi <= j_lo:
                raise ValueError("window ranges must be non-empty")


def default_palette(modulus: int) -> dict[int, tuple[int, int, int]]:
    """Residue 0 renders white, the top residue black, the rest evenly gray."""
    if modulus == 2:
        return {0: (255, 255, 255), 1: (0, 0, 0)}
    return {
        x: (round(255 * (1 - x / (modulus - 1))),) * 3 for x in range(modulus)
    }


def _pbm_bytes(pixels: list[list[int]]) -> bytes:
    height = len(pixels)
    width = len(pixels[0])
    lines = [f"P1\n{width} {height}\n"]
    for row in pixels:
        lines.append(" ".join(str(bit) for bit in row) + "\n")
    return "".join(lines).encode("ascii")


def _ppm_bytes(pixels: list[list[tuple[int, int, int]]]) -> bytes:
    height = len(pixels)
    width = len(pixels[0])
    lines = [f"P3\n{width} {height}\n255\n"]
    for row in pixels:
        lines.append(" ".join(f"{r} {g} {b}" for r, g, b in row) + "\n")
    return "".join(lines).encode("ascii")


def _scale(cells: list[list], cell_size: int) -> list[list]:
    if cell_size == 1:
        return cells
    out = []
    for row in cells:
        scaled = [value for value in row for _ in range(cell_size)]
        out.extend([scaled] * cell_size)
    # copy rows so later in-place edits stay independent
    return [list(row) for row in out]


def _check_pixels(width: int, height: int, spec: RenderSpec) -> None:
    if width * height * spec.cell_size * spec.cell_size > spec.max_pixels:
        raise WindowTooLarge(
            f"{width}x{height} cells at size {spec.cell_size} exceeds the pixel cap"
        )


def _orbit_rows(x: ResidueTuple, i_hi: int) -> list[tuple[int, ...]]:
    rows = []
    row = x
    for _ in range(max(i_hi, 1)):
        rows.append(row.entries)
        row = derive_tuple(row)
    return rows


def _overlay_cells(
    overlays, window
) -> set[tuple[int, int]]:
    """Boundary cells of each overlay triangle, in window coordinates."""
    (i_lo, i_hi), (j_lo, j_hi) = window
    marked: set[tuple[int, int]] = set()

    def mark(i: int, j: int) -> None:
        if i_lo <= i < i_hi and j_lo <= j < j_hi:
            marked.add((i - i_lo, j - j_lo))

    for kind, i0, j0, n in overlays:
        for k in range(n):
            if kind is Orientation.STEINHAUS:
                mark(i0, j0 + k)          # top row
                mark(i0 + k, j0 + k)      # left staircase
                mark(i0 + k, j0 + n - 1)  # right edge
            else:
                mark(i0 + n - 1, j0 + k)  # bottom row
                mark(i0 + k, j0)          # left edge
                mark(i0 + k, j0 + k)      # right staircase
    return marked


def render_orbit(x: ResidueTuple, spec: RenderSpec = RenderSpec()) -> bytes:
    """Raster of an orbit window: rows are iterated derivatives of x, columns
    wrap mod len(x).  PBM for two residues without overlays, PPM otherwise."""
    p = len(x)
    if p == 0:
        raise ValueError("cannot render an empty tuple")
    window = spec.window or ((0, p), (0, p))
    (i_lo, i_hi), (j_lo, j_hi) = window
    if i_lo < 0:
        raise ValueError("row range must start at a non-negative index")
    width, height = j_hi - j_lo, i_hi - i_lo
    _check_pixels(width, height, spec)
    rows = _orbit_rows(x, i_hi)
    cells = [
        [rows[i][j % p] for j in range(j_lo, j_hi)] for i in range(i_lo, i_hi)
    ]
    if x.modulus == 2 and spec.palette is None and not spec.overlays:
        return _pbm_bytes(_scale(cells, spec.cell_size))
    palette = dict(spec.palette) if spec.palette else default_palette(x.modulus)
    colored = [[palette[value] for value in row] for row in cells]
    for i, j in _overlay_cells(spec.overlays, window):
        colored[i][j] = OUTLINE_COLOR
    return _ppm_bytes(_scale(colored, spec.cell_size))


def _family_outline_pixels(
    kind: Orientation, p: int, r: int, n: int, cell: int
) -> set[tuple[int, int]]:
    """Pixel positions of the block-boundary lines of the size-n triangle
    (one corner block, then one band and one period square per step)."""
    marked: set[tuple[int, int]] = set()
    boundaries = range(r if r else p, n, p)
    if kind is Orientation.STEINHAUS:
        for j in boundaries:
            for y in range(0, j * cell):
                marked.add((y, j * cell))
        for i in range(p, n, p):
            for xpx in range((i + r) * cell, n * cell):
                marked.add((i * cell, xpx))
    else:
        for i in boundaries:
            for xpx in range(0, i * cell):
                marked.add((i * cell, xpx))
        for j in range(p, n, p):
            for y in range((j + r) * cell, n * cell):
                marked.add((y, j * cell))
    return marked


def render_family(
    cert: FamilyCertificate, multiplier: int, spec: RenderSpec = RenderSpec()
) -> bytes:
    """Raster of the size-(multiplier*p + r) triangle of a certified family.

    With cell_size >= 3 the block decomposition is outlined in red (the
    lines occupy one pixel strip of the adjacent cells); smaller cells give
    a pure two-color image whose pixel counts equal the residue counts.
    """
    if multiplier < 0:
        raise ValueError("multiplier must be non-negative")
    grid = build_period_grid(cert.generator)
    p = grid.p
    i0, j0 = cert.position
    n = multiplier * p + cert.remainder
    if n == 0:
        raise ValueError("family triangle of size 0 has nothing to render")
    _check_pixels(n, n, spec)
    steinhaus = cert.kind is Orientation.STEINHAUS
    extract = extract_steinhaus_block if steinhaus else extract_pascal_block
    triangle = extract(grid, i0, j0, n)
    draw_outline = spec.cell_size >= 3
    if spec.palette is None and not draw_outline:
        pixels = [[0] * n for _ in range(n)]
        for i in range(n):
            row = triangle.rows[i]
            for k, value in enumerate(row):
                j = i + k if steinhaus else k
                pixels[i][j] = value
        return _pbm_bytes(_scale(pixels, spec.cell_size))
    palette = dict(spec.palette) if spec.palette else default_palette(2)
    colored = [[BACKGROUND] * n for _ in range(n)]
    for i in range(n):
        row = triangle.rows[i]
        for k, value in enumerate(row):
            j = i + k if steinhaus else k
            colored[i][j] = palette[value]
    scaled = _scale(colored, spec.cell_size)
    if draw_outline:
        for y, xpx in _family_outline_pixels(
            cert.kind, p, cert.remainder, n, spec.cell_size
        ):
            scaled[y][xpx] = OUTLINE_COLOR
    return _ppm_bytes(scaled)
