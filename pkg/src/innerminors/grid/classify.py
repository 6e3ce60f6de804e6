"""Shape predicates for cell collections.

Everything is decided by direct definition checks.  Path witnesses for
closed and weakly closed sequences are returned explicitly so callers
can reuse them for certificate construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .base import (
    Cell,
    CellCollection,
    Interval,
    Vertex,
    cells_region_intersection,
    edge_neighbors_in,
    is_edge_connected,
    maximal_inner_intervals,
    vertex_sort_key,
)


@dataclass(frozen=True)
class ClassificationRecord:
    is_polyomino: bool
    is_thin: bool
    is_row_convex: bool
    is_col_convex: bool
    is_convex: bool
    is_parallelogram: bool
    is_ladder: bool
    left_most_vertices: Optional[tuple[Vertex, ...]]
    is_simple: bool
    closed_path: Optional[tuple[Cell, ...]]
    weakly_closed_path: Optional[tuple[Cell, ...]]
    thin_thm51: bool
    thin_reflected: bool
    thin_cellwise_intersections: bool

    def as_dict(self) -> dict:
        return {
            "is_polyomino": self.is_polyomino,
            "is_thin": self.is_thin,
            "is_row_convex": self.is_row_convex,
            "is_col_convex": self.is_col_convex,
            "is_convex": self.is_convex,
            "is_parallelogram": self.is_parallelogram,
            "is_ladder": self.is_ladder,
            "left_most_vertices": [list(v) for v in self.left_most_vertices]
            if self.left_most_vertices is not None
            else None,
            "is_simple": self.is_simple,
            "closed_path": [list(c) for c in self.closed_path]
            if self.closed_path is not None
            else None,
            "weakly_closed_path": [list(c) for c in self.weakly_closed_path]
            if self.weakly_closed_path is not None
            else None,
            "thin_thm51": self.thin_thm51,
            "thin_reflected": self.thin_reflected,
            "thin_cellwise_intersections": self.thin_cellwise_intersections,
        }


def classify(P: CellCollection) -> ClassificationRecord:
    poly = is_edge_connected(P.cells)
    thin = _is_thin(P)
    row_convex = _is_row_convex(P)
    col_convex = _is_col_convex(P)
    convex = row_convex and col_convex
    parallelogram = poly and convex and _vertex_set_is_sublattice(P)
    ladder, left_most = _ladder_data(P, poly, row_convex)
    simple = _is_simple(P)
    closed = _closed_path_witness(P)
    weakly = None if closed is not None else _weakly_closed_path_witness(P)
    thm51 = thin and _thm51_conditions(P)
    reflected = _is_thin(P.mirror()) and _thm51_conditions(P.mirror())
    cellwise = thin and _cellwise_intersections(P)
    return ClassificationRecord(
        is_polyomino=poly,
        is_thin=thin,
        is_row_convex=row_convex,
        is_col_convex=col_convex,
        is_convex=convex,
        is_parallelogram=parallelogram,
        is_ladder=ladder,
        left_most_vertices=left_most,
        is_simple=simple,
        closed_path=closed,
        weakly_closed_path=weakly,
        thin_thm51=thm51,
        thin_reflected=reflected,
        thin_cellwise_intersections=cellwise,
    )


def _is_thin(P: CellCollection) -> bool:
    for c in P.cells:
        if (
            Cell(c.i + 1, c.j) in P.cellset
            and Cell(c.i, c.j + 1) in P.cellset
            and Cell(c.i + 1, c.j + 1) in P.cellset
        ):
            return False
    return True


def _is_row_convex(P: CellCollection) -> bool:
    rows: dict[int, list[int]] = {}
    for c in P.cells:
        rows.setdefault(c.j, []).append(c.i)
    for js in rows.values():
        js.sort()
        if js[-1] - js[0] + 1 != len(js):
            return False
    return True


def _is_col_convex(P: CellCollection) -> bool:
    cols: dict[int, list[int]] = {}
    for c in P.cells:
        cols.setdefault(c.i, []).append(c.j)
    for is_ in cols.values():
        is_.sort()
        if is_[-1] - is_[0] + 1 != len(is_):
            return False
    return True


def _vertex_set_is_sublattice(P: CellCollection) -> bool:
    vs = set(P.vertex_set())
    for u in vs:
        for w in vs:
            meet = (min(u[0], w[0]), min(u[1], w[1]))
            join = (max(u[0], w[0]), max(u[1], w[1]))
            if meet not in vs or join not in vs:
                return False
    return True


def _ladder_data(
    P: CellCollection, poly: bool, row_convex: bool
) -> tuple[bool, Optional[tuple[Vertex, ...]]]:
    if not (poly and row_convex):
        return False, None
    levels: dict[int, int] = {}
    for v in P.vertex_set():
        levels[v[1]] = min(levels.get(v[1], v[0]), v[0])
    left_most = tuple((levels[j], j) for j in sorted(levels))
    ok = all(
        Cell(a[0], a[1] - 1) in P.cellset for a in left_most[1:]
    )
    return ok, left_most


def _is_simple(P: CellCollection) -> bool:
    imin, jmin, imax, jmax = P.bounding_box()
    lo_i, hi_i = imin - 1, imax + 1
    lo_j, hi_j = jmin - 1, jmax + 1
    outside = [
        Cell(i, j)
        for i in range(lo_i, hi_i + 1)
        for j in range(lo_j, hi_j + 1)
        if Cell(i, j) not in P.cellset
    ]
    if not outside:
        return True
    outset = frozenset(outside)
    start = outside[0]
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for n in cur.neighbors():
            if n in outset and n not in seen:
                seen.add(n)
                frontier.append(n)
    return len(seen) == len(outside)


def _vertex_overlap(a: Cell, b: Cell) -> set[Vertex]:
    return set(a.vertices()) & set(b.vertices())


def _locality_ok(seq: list[Cell], n: int) -> bool:
    """Cells at cyclic distance >= 3 must share no vertex."""
    for x in range(n):
        for y in range(x + 1, n):
            d = min(y - x, n - (y - x))
            if d >= 3 and _vertex_overlap(seq[x], seq[y]):
                return False
    return True


def _closed_path_witness(P: CellCollection) -> Optional[tuple[Cell, ...]]:
    n = len(P.cells)
    if n < 6:
        return None
    adj = {c: edge_neighbors_in(P.cellset, c) for c in P.cells}
    if any(len(v) != 2 for v in adj.values()):
        return None
    start = min(P.cells, key=vertex_sort_key)
    seq = [start]
    prev = None
    cur = start
    while True:
        nbrs = [x for x in adj[cur] if x != prev]
        if prev is None:
            nxt = min(nbrs, key=vertex_sort_key)
        else:
            if len(nbrs) != 1:
                return None
            nxt = nbrs[0]
        if nxt == start:
            break
        prev, cur = cur, nxt
        seq.append(cur)
        if len(seq) > n:
            return None
    if len(seq) != n:
        return None  # several disjoint cycles
    for k in range(n):
        if not _vertex_overlap(seq[k], seq[(k + 1) % n]):
            return None
    if not _locality_ok(seq, n):
        return None
    return tuple(seq)


def _weakly_closed_path_witness(P: CellCollection) -> Optional[tuple[Cell, ...]]:
    n = len(P.cells)
    if n < 6:
        return None
    adj = {c: edge_neighbors_in(P.cellset, c) for c in P.cells}
    ends = [c for c in P.cells if len(adj[c]) == 1]
    if len(ends) != 2 or any(len(adj[c]) > 2 for c in P.cells):
        return None
    start = min(ends, key=vertex_sort_key)
    other = ends[0] if ends[1] == start else ends[1]
    seq = [start]
    prev = None
    cur = start
    while cur != other:
        nbrs = [x for x in adj[cur] if x != prev]
        if len(nbrs) != 1:
            return None
        prev, cur = cur, nbrs[0]
        seq.append(cur)
        if len(seq) > n:
            return None
    if len(seq) != n:
        return None  # a disconnected extra component would be missed
    contact = _vertex_overlap(seq[0], seq[-1])
    if len(contact) != 1:
        return None
    if not _locality_ok(seq, n):
        return None
    return tuple(seq)


def _thm51_conditions(P: CellCollection) -> bool:
    """The three exclusion rules for the thin Groebner-basis theorem."""
    # (1) no three cells stacked along a descending diagonal staircase
    for c in P.cells:
        if Cell(c.i + 1, c.j - 1) in P.cellset and Cell(c.i + 2, c.j - 2) in P.cellset:
            return False
    for m in maximal_inner_intervals(P):
        (i1, j1), (i2, j2) = m
        if i2 - i1 == 1:
            # vertical: no cell with lower-right vertex (i1, j2), none with
            # upper-left vertex (i1+1, j1)
            if Cell(i1 - 1, j2) in P.cellset or Cell(i1 + 1, j1 - 1) in P.cellset:
                return False
        if j2 - j1 == 1:
            # horizontal: no cell with lower-right vertex (i1, j1+1), none
            # with upper-left vertex (i2, j1)
            if Cell(i1 - 1, j1 + 1) in P.cellset or Cell(i2, j1 - 1) in P.cellset:
                return False
    return True


def _cellwise_intersections(P: CellCollection) -> bool:
    """Any two meeting maximal inner intervals meet in exactly one cell."""
    maxes = maximal_inner_intervals(P)
    for x in range(len(maxes)):
        for y in range(x + 1, len(maxes)):
            common = cells_region_intersection(maxes[x], maxes[y])
            if common is None:
                continue
            if not (common.width == 1 and common.height == 1):
                return False
    return True
