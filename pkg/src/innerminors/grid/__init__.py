"""Grid geometry: cells, intervals, collections, classification."""

from .base import (
    Cell,
    CellCollection,
    Interval,
    Vertex,
    cells_region_intersection,
    edge_neighbors_in,
    inner_intervals,
    interval_sort_key,
    is_edge_connected,
    maximal_inner_intervals,
    parse_ascii,
    parse_cells,
    parse_coordinates,
    render,
    vertex_set_of,
    vertex_sort_key,
)
from .classify import ClassificationRecord, classify
from .decompose import (
    AntidiagonalClass,
    CollapseDatum,
    antidiagonal_partition,
    check_collapse_datum,
    check_staircase_containment,
    find_collapse_datum,
    staircase_cells,
)

__all__ = [
    "AntidiagonalClass",
    "Cell",
    "CellCollection",
    "ClassificationRecord",
    "CollapseDatum",
    "Interval",
    "Vertex",
    "antidiagonal_partition",
    "cells_region_intersection",
    "check_collapse_datum",
    "check_staircase_containment",
    "classify",
    "edge_neighbors_in",
    "find_collapse_datum",
    "inner_intervals",
    "interval_sort_key",
    "is_edge_connected",
    "maximal_inner_intervals",
    "parse_ascii",
    "parse_cells",
    "parse_coordinates",
    "render",
    "staircase_cells",
    "vertex_set_of",
    "vertex_sort_key",
]
