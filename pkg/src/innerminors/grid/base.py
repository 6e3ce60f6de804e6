"""Cells, intervals, and collections of cells on the positive integer grid.

A cell is the unit square [a, a+(1,1)] named by its lower-left corner a.
Collections are immutable; every list-valued result is sorted row-major,
meaning by (j, i), so golden outputs are reproducible.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from ..errors import InputError

Vertex = tuple  # (i, j), both >= 1 for real grid points


def vertex_sort_key(v: Vertex) -> tuple:
    return (v[1], v[0])


class Cell(tuple):
    """Unit cell named by its lower-left corner; behaves like (i, j)."""

    __slots__ = ()

    def __new__(cls, i: int, j: int):
        return tuple.__new__(cls, (int(i), int(j)))

    def __getnewargs__(self) -> tuple:
        return (self[0], self[1])

    @property
    def i(self) -> int:
        return self[0]

    @property
    def j(self) -> int:
        return self[1]

    @property
    def lower_left(self) -> Vertex:
        return (self[0], self[1])

    @property
    def lower_right(self) -> Vertex:
        return (self[0] + 1, self[1])

    @property
    def upper_left(self) -> Vertex:
        return (self[0], self[1] + 1)

    @property
    def upper_right(self) -> Vertex:
        return (self[0] + 1, self[1] + 1)

    def vertices(self) -> tuple[Vertex, Vertex, Vertex, Vertex]:
        i, j = self
        return ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1))

    def edges(self) -> tuple[frozenset, ...]:
        i, j = self
        return (
            frozenset({(i, j), (i + 1, j)}),
            frozenset({(i, j + 1), (i + 1, j + 1)}),
            frozenset({(i, j), (i, j + 1)}),
            frozenset({(i + 1, j), (i + 1, j + 1)}),
        )

    def neighbors(self) -> tuple["Cell", ...]:
        i, j = self
        return (Cell(i - 1, j), Cell(i + 1, j), Cell(i, j - 1), Cell(i, j + 1))

    def interval(self) -> "Interval":
        return Interval((self[0], self[1]), (self[0] + 1, self[1] + 1))

    def __repr__(self) -> str:
        return f"Cell({self[0]},{self[1]})"


class Interval(tuple):
    """Grid interval [low, high]; proper when strict in both coordinates."""

    __slots__ = ()

    def __new__(cls, low: Vertex, high: Vertex):
        low = (int(low[0]), int(low[1]))
        high = (int(high[0]), int(high[1]))
        if not (low[0] <= high[0] and low[1] <= high[1]):
            raise ValueError(f"interval bounds out of order: {low} .. {high}")
        return tuple.__new__(cls, (low, high))

    @property
    def low(self) -> Vertex:
        return self[0]

    @property
    def high(self) -> Vertex:
        return self[1]

    @property
    def is_proper(self) -> bool:
        return self[0][0] < self[1][0] and self[0][1] < self[1][1]

    @property
    def width(self) -> int:
        return self[1][0] - self[0][0]

    @property
    def height(self) -> int:
        return self[1][1] - self[0][1]

    @property
    def diagonal_pair(self) -> tuple[Vertex, Vertex]:
        return (self[0], self[1])

    @property
    def antidiagonal_pair(self) -> tuple[Vertex, Vertex]:
        """(upper-left, lower-right)."""
        (i1, j1), (i2, j2) = self
        return ((i1, j2), (i2, j1))

    @property
    def upper_left(self) -> Vertex:
        return (self[0][0], self[1][1])

    @property
    def lower_right(self) -> Vertex:
        return (self[1][0], self[0][1])

    def corner_vertices(self) -> tuple[Vertex, ...]:
        return (self[0], self[1]) + self.antidiagonal_pair

    def cells(self) -> list[Cell]:
        (i1, j1), (i2, j2) = self
        return [Cell(i, j) for j in range(j1, j2) for i in range(i1, i2)]

    def vertex_grid(self) -> list[Vertex]:
        (i1, j1), (i2, j2) = self
        return [(i, j) for j in range(j1, j2 + 1) for i in range(i1, i2 + 1)]

    def contains_vertex(self, v: Vertex) -> bool:
        (i1, j1), (i2, j2) = self
        return i1 <= v[0] <= i2 and j1 <= v[1] <= j2

    def contains(self, other: "Interval") -> bool:
        return (
            self[0][0] <= other[0][0]
            and self[0][1] <= other[0][1]
            and other[1][0] <= self[1][0]
            and other[1][1] <= self[1][1]
        )

    def end_edges(self) -> tuple[frozenset, frozenset]:
        """The two extreme edges of a width-1 or height-1 proper interval."""
        (i1, j1), (i2, j2) = self
        if i2 - i1 == 1:
            return (
                frozenset({(i1, j1), (i2, j1)}),
                frozenset({(i1, j2), (i2, j2)}),
            )
        if j2 - j1 == 1:
            return (
                frozenset({(i1, j1), (i1, j2)}),
                frozenset({(i2, j1), (i2, j2)}),
            )
        raise ValueError("end edges are defined for 1-wide or 1-tall intervals")

    def __repr__(self) -> str:
        return f"Interval({self[0]},{self[1]})"


def interval_sort_key(iv: Interval) -> tuple:
    return (iv[0][1], iv[0][0], iv[1][1], iv[1][0])


class CellCollection:
    """An immutable, non-empty, finite set of cells."""

    __slots__ = ("cells", "cellset", "_vset")

    def __init__(self, cells: Iterable):
        normalized = {Cell(c[0], c[1]) for c in cells}
        if not normalized:
            raise InputError("a cell collection must contain at least one cell")
        for c in normalized:
            if c.i < 1 or c.j < 1:
                raise InputError(f"cell {tuple(c)} has non-positive coordinates")
        self.cells = tuple(sorted(normalized, key=vertex_sort_key))
        self.cellset = frozenset(normalized)
        self._vset: Optional[tuple] = None

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, c) -> bool:
        return Cell(c[0], c[1]) in self.cellset

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CellCollection) and self.cellset == other.cellset

    def __hash__(self) -> int:
        return hash(self.cellset)

    def __repr__(self) -> str:
        inner = ", ".join(f"({c.i},{c.j})" for c in self.cells)
        return f"CellCollection[{inner}]"

    def vertex_set(self) -> tuple[Vertex, ...]:
        if self._vset is None:
            vs: set[Vertex] = set()
            for c in self.cells:
                vs.update(c.vertices())
            self._vset = tuple(sorted(vs, key=vertex_sort_key))
        return self._vset

    def bounding_box(self) -> tuple[int, int, int, int]:
        """(imin, jmin, imax, jmax) over cell lower-left corners."""
        imin = min(c.i for c in self.cells)
        imax = max(c.i for c in self.cells)
        jmin = min(c.j for c in self.cells)
        jmax = max(c.j for c in self.cells)
        return imin, jmin, imax, jmax

    def translate(self, di: int, dj: int) -> "CellCollection":
        return CellCollection(Cell(c.i + di, c.j + dj) for c in self.cells)

    def normalize(self) -> "CellCollection":
        """Translate so the minimum cell coordinates are (1, 1)."""
        imin, jmin, _, _ = self.bounding_box()
        if imin == 1 and jmin == 1:
            return self
        return self.translate(1 - imin, 1 - jmin)

    def mirror(self) -> "CellCollection":
        """Reflection across a vertical axis, renormalized to the same box."""
        imin, _, imax, _ = self.bounding_box()
        return CellCollection(Cell(imin + imax - c.i, c.j) for c in self.cells)

    def with_cells(self, extra: Iterable) -> "CellCollection":
        return CellCollection(tuple(self.cells) + tuple(Cell(c[0], c[1]) for c in extra))

    def without_cells(self, removed: Iterable) -> "CellCollection":
        gone = {Cell(c[0], c[1]) for c in removed}
        return CellCollection(c for c in self.cells if c not in gone)


def vertex_set_of(cells: Iterable[Cell]) -> tuple[Vertex, ...]:
    vs: set[Vertex] = set()
    for c in cells:
        vs.update(Cell(c[0], c[1]).vertices())
    return tuple(sorted(vs, key=vertex_sort_key))


def edge_neighbors_in(cellset: frozenset, c: Cell) -> list[Cell]:
    return [n for n in c.neighbors() if n in cellset]


def is_edge_connected(cells: Iterable[Cell]) -> bool:
    cellset = frozenset(Cell(c[0], c[1]) for c in cells)
    if not cellset:
        return False
    start = next(iter(cellset))
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for n in cur.neighbors():
            if n in cellset and n not in seen:
                seen.add(n)
                frontier.append(n)
    return len(seen) == len(cellset)


def inner_intervals_of_cellset(cellset: set) -> list[Interval]:
    """Inner intervals of a plain (possibly empty) set of cells."""
    if not cellset:
        return []
    vset = set(vertex_set_of(cellset))
    out: list[Interval] = []
    vs = sorted(vset)
    for a in vs:
        for b in vs:
            if not (a[0] < b[0] and a[1] < b[1]):
                continue
            if (a[0], b[1]) not in vset or (b[0], a[1]) not in vset:
                continue
            iv = Interval(a, b)
            if all(c in cellset for c in iv.cells()):
                out.append(iv)
    out.sort(key=interval_sort_key)
    return out


def inner_intervals(P: CellCollection) -> list[Interval]:
    """All proper intervals with corners in V(P) whose cells lie in P."""
    return inner_intervals_of_cellset(P.cellset)


def maximal_inner_intervals(P: CellCollection) -> list[Interval]:
    all_iv = inner_intervals(P)
    out = [
        iv
        for iv in all_iv
        if not any(other is not iv and other.contains(iv) for other in all_iv)
    ]
    out.sort(key=interval_sort_key)
    return out


def cells_region_intersection(a: Interval, b: Interval) -> Optional[Interval]:
    """The interval a ∩ b as grid regions, or None when disjoint."""
    low = (max(a[0][0], b[0][0]), max(a[0][1], b[0][1]))
    high = (min(a[1][0], b[1][0]), min(a[1][1], b[1][1]))
    if low[0] > high[0] or low[1] > high[1]:
        return None
    return Interval(low, high)


# ---------------------------------------------------------------------------
# parsing

def parse_coordinates(text: str) -> CellCollection:
    """Format A: one "i j" pair per line, '#' comments, blank lines ignored."""
    cells: list[Cell] = []
    seen: dict[Cell, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'i j', got {raw.strip()!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer coordinate in {raw.strip()!r}")
        if i < 1 or j < 1:
            raise InputError(f"line {lineno}: coordinates must be >= 1, got ({i}, {j})")
        c = Cell(i, j)
        if c in seen:
            raise InputError(f"line {lineno}: duplicate cell ({i}, {j}), first at line {seen[c]}")
        seen[c] = lineno
        cells.append(c)
    if not cells:
        raise InputError("no cells in input")
    return CellCollection(cells)


def parse_ascii(text: str) -> CellCollection:
    """Format B: rows of '.' and '#', top row first; '#' marks a cell.

    The result is translated so the minimum coordinates are (1, 1).
    """
    rows = [line.rstrip("\n") for line in text.splitlines()]
    while rows and not rows[0].strip():
        rows.pop(0)
    while rows and not rows[-1].strip():
        rows.pop()
    if not rows:
        raise InputError("no cells in input")
    height = len(rows)
    cells: list[Cell] = []
    for r, line in enumerate(rows):
        for cpos, ch in enumerate(line):
            if ch == "#":
                cells.append(Cell(cpos + 1, height - r))
            elif ch not in (".", " "):
                raise InputError(
                    f"line {r + 1}, column {cpos + 1}: unexpected character {ch!r}"
                )
    if not cells:
        raise InputError("no cells in input")
    return CellCollection(cells).normalize()


def parse_cells(text: str) -> CellCollection:
    """Auto-detect format A (coordinates) vs format B (ascii art)."""
    meaningful = [ln for ln in text.splitlines() if ln.strip()]
    if meaningful and all(set(ln.strip()) <= {".", "#"} for ln in meaningful):
        return parse_ascii(text)
    return parse_coordinates(text)


# ---------------------------------------------------------------------------
# rendering

def render(
    P: CellCollection,
    labels: Optional[dict[Vertex, str]] = None,
    format: str = "ascii",
) -> str:
    if format == "ascii":
        return _render_ascii(P, labels)
    if format == "svg":
        return _render_svg(P, labels)
    raise InputError(f"unknown render format {format!r}")


def _render_ascii(P: CellCollection, labels: Optional[dict[Vertex, str]]) -> str:
    vs = P.vertex_set()
    imin = min(v[0] for v in vs)
    imax = max(v[0] for v in vs)
    jmin = min(v[1] for v in vs)
    jmax = max(v[1] for v in vs)
    width = 3 * (imax - imin) + 1
    height = 2 * (jmax - jmin) + 1
    canvas = [[" "] * width for _ in range(height)]

    def at(v: Vertex) -> tuple[int, int]:
        return (2 * (jmax - v[1]), 3 * (v[0] - imin))

    for c in P.cells:
        (r_ll, x_ll) = at(c.lower_left)
        (r_ul, x_ul) = at(c.upper_left)
        for corner in c.vertices():
            rr, xx = at(corner)
            canvas[rr][xx] = "+"
        for rr, xx in (at(c.lower_left), at(c.upper_left)):
            canvas[rr][xx + 1] = "-"
            canvas[rr][xx + 2] = "-"
        canvas[r_ul + 1][x_ul] = "|"
        canvas[r_ll - 1][x_ll + 3] = "|"
        canvas[r_ul + 1][x_ul + 3] = "|"
        canvas[r_ll - 1][x_ll] = "|"
    lines = ["".join(row).rstrip() for row in canvas]
    if labels:
        lines.append("")
        for v in sorted(labels, key=vertex_sort_key):
            lines.append(f"({v[0]},{v[1]}): {labels[v]}")
    return "\n".join(lines) + "\n"


def _render_svg(P: CellCollection, labels: Optional[dict[Vertex, str]]) -> str:
    unit = 40
    margin = 30
    vs = P.vertex_set()
    imin = min(v[0] for v in vs)
    imax = max(v[0] for v in vs)
    jmin = min(v[1] for v in vs)
    jmax = max(v[1] for v in vs)
    width = (imax - imin) * unit + 2 * margin
    height = (jmax - jmin) * unit + 2 * margin

    def x_of(i: int) -> int:
        return margin + (i - imin) * unit

    def y_of(j: int) -> int:
        return margin + (jmax - j) * unit

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for c in P.cells:
        x = x_of(c.i)
        y = y_of(c.j + 1)
        parts.append(
            f'<rect x="{x}" y="{y}" width="{unit}" height="{unit}" '
            f'fill="none" stroke="black" stroke-width="1"/>'
        )
    if labels:
        for v in sorted(labels, key=vertex_sort_key):
            parts.append(
                f'<text x="{x_of(v[0]) + 3}" y="{y_of(v[1]) - 3}" '
                f'font-size="12">{_xml_escape(labels[v])}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _xml_escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
