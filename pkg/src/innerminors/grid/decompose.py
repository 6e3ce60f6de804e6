"""Anti-diagonal vertex partition and the collapse datum search.

The partition follows each vertex v to v + (1, -1) whenever the cell
with lower-left corner (v1, v2 - 1) is present, i.e. the two vertices
are the upper-left and lower-right corners of a cell of P.  Every
vertex has at most one predecessor and at most one successor under this
rule, so the maximal chains are unique.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from ..errors import SoundnessAlarm
from .base import (
    Cell,
    CellCollection,
    Interval,
    Vertex,
    cells_region_intersection,
    is_edge_connected,
    maximal_inner_intervals,
    vertex_sort_key,
)
from .classify import classify


class AntidiagonalClass(NamedTuple):
    vertices: tuple[Vertex, ...]   # V_k, walking down the anti-diagonal
    cells: tuple[Cell, ...]        # C_k, between consecutive vertices
    cumulative: tuple[Cell, ...]   # union of C_1 .. C_k


def antidiagonal_partition(P: CellCollection) -> list[AntidiagonalClass]:
    cellset = P.cellset
    vset = set(P.vertex_set())

    def successor(v: Vertex) -> Optional[Vertex]:
        if Cell(v[0], v[1] - 1) in cellset:
            return (v[0] + 1, v[1] - 1)
        return None

    def has_predecessor(v: Vertex) -> bool:
        return Cell(v[0] - 1, v[1]) in cellset

    chains: list[list[Vertex]] = []
    for v in sorted(vset):
        if has_predecessor(v):
            continue
        chain = [v]
        cur = v
        while True:
            nxt = successor(cur)
            if nxt is None:
                break
            chain.append(nxt)
            cur = nxt
        chains.append(chain)
    chains.sort(key=lambda ch: (ch[0][0] + ch[0][1], ch[0][0]))

    covered = [v for ch in chains for v in ch]
    if len(covered) != len(set(covered)) or set(covered) != vset:
        raise SoundnessAlarm("anti-diagonal chains do not partition the vertex set")

    out: list[AntidiagonalClass] = []
    cumulative: set[Cell] = set()
    for chain in chains:
        cells = tuple(
            Cell(chain[k][0], chain[k][1] - 1) for k in range(len(chain) - 1)
        )
        cumulative.update(cells)
        out.append(
            AntidiagonalClass(
                vertices=tuple(chain),
                cells=cells,
                cumulative=tuple(sorted(cumulative, key=vertex_sort_key)),
            )
        )
    return out


def staircase_cells(part: AntidiagonalClass) -> tuple[Cell, ...]:
    """The triangular cell pattern that must sit inside the cumulative
    collection whenever C_k is non-empty: cells with upper-left vertex
    (i_k + u, j_k + v) for 1 <= u <= n_k - 1, 2 <= v <= n_k, u + v <= n_k + 1.
    """
    n = len(part.vertices)
    if n < 2:
        return ()
    first = part.vertices[0]
    i_k = first[0] - 1
    j_k = first[1] - n
    cells = []
    for u in range(1, n):
        for v in range(2, n + 1):
            if u + v <= n + 1:
                cells.append(Cell(i_k + u, j_k + v - 1))
    return tuple(sorted(cells, key=vertex_sort_key))


def check_staircase_containment(P: CellCollection) -> bool:
    """For every class with cells, the staircase lies in the cumulative union."""
    for part in antidiagonal_partition(P):
        if not part.cells:
            continue
        have = set(part.cumulative)
        if not all(c in have for c in staircase_cells(part)):
            return False
    return True


class CollapseDatum(NamedTuple):
    interval_i: Interval
    interval_j: Interval
    pi_cells: tuple[Cell, ...]   # may be empty
    crossing_cell: Cell          # the cell I ∩ J


def _single_cell_meet(a: Interval, b: Interval) -> Optional[Cell]:
    common = cells_region_intersection(a, b)
    if common is None or not (common.width == 1 and common.height == 1):
        return None
    return Cell(common.low[0], common.low[1])


def check_collapse_datum(
    P: CellCollection, I: Interval, J: Interval, pi_cells: tuple[Cell, ...]
) -> bool:
    """Independent re-check of the three collapse conditions."""
    maxes = maximal_inner_intervals(P)
    if I not in maxes or J not in maxes or I == J:
        return False
    cell = _single_cell_meet(I, J)
    if cell is None:
        return False
    for K in maxes:
        if K == I:
            continue
        if _single_cell_meet(I, K) is not None and K != J:
            return False
    pi = set(pi_cells)
    if not pi <= set(J.cells()):
        return False
    if cell in pi:
        return False
    if pi and not is_edge_connected(pi):
        return False
    rest = [c for c in P.cells if c not in pi and c not in set(I.cells())]
    if not rest or not is_edge_connected(rest):
        return False
    return True


def find_collapse_datum(P: CellCollection) -> Optional[CollapseDatum]:
    record = classify(P)
    maxes = maximal_inner_intervals(P)
    if not (record.is_polyomino and record.is_simple and record.is_thin):
        raise ValueError("collapse datum needs a simple thin polyomino")
    if len(maxes) < 2:
        raise ValueError("collapse datum needs at least two maximal inner intervals")

    for I in maxes:
        candidates = [
            (J, _single_cell_meet(I, J)) for J in maxes if J != I
        ]
        cell_meets = [(J, c) for J, c in candidates if c is not None]
        if len(cell_meets) != 1:
            continue  # condition (1) wants a unique J
        J, cell = cell_meets[0]
        for pi in _pi_candidates(J, cell):
            if check_collapse_datum(P, I, J, pi):
                return CollapseDatum(I, J, pi, cell)
    raise SoundnessAlarm(
        "no collapse datum found although the polyomino has two or more "
        "maximal inner intervals"
    )


def _pi_candidates(J: Interval, crossing: Cell):
    """Empty set first, then connected runs of J's cells avoiding the
    crossing cell, shortest first; J is 1-wide or 1-tall here."""
    cells = [c for c in J.cells() if c != crossing]
    yield ()
    # contiguous runs within the bar, grouped by the side of the crossing
    runs: list[tuple[Cell, ...]] = []
    ordered = sorted(cells, key=vertex_sort_key)
    for start in range(len(ordered)):
        for stop in range(start + 1, len(ordered) + 1):
            run = tuple(ordered[start:stop])
            if is_edge_connected(run) and crossing not in run:
                runs.append(run)
    runs.sort(key=lambda r: (len(r), r))
    for run in runs:
        yield run
