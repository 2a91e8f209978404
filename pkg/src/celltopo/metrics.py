"""Graph distance and i-cell distance over a discrete space.

The i-cell distance between vertices x and y is the minimum number of
i-cells in a sequence whose first cell contains x, whose last contains y,
and where consecutive cells share an (i-1)-cell.  Level 1 is ordinary
edge (graph) distance.  Within a single cell any two vertices count as
distance 1 at that cell's level.

Adjacency structures are built once per space and cached on it; all
queries afterwards are pure reads.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

from .complexes import CheckReport, DiscreteSpace
from .errors import InputError, PreconditionError

UNREACHABLE = math.inf


def graph_distance(space: DiscreteSpace, x: int, y: int):
    """Shortest edge-path length; 0 for x == y; inf when disconnected."""
    space.require_vertex(x)
    space.require_vertex(y)
    if x == y:
        return 0
    dist = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in space.vertex_neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                if w == y:
                    return dist[w]
                queue.append(w)
    return UNREACHABLE


def _cell_adjacency(space: DiscreteSpace, i: int) -> dict:
    key = ("cell_adj", i)
    if key not in space._caches:
        adj = {c: set() for c in space.cells_of_dim(i)}
        for f in space.cells_of_dim(i - 1):
            cs = space.cofaces(f)
            for a, b in itertools.combinations(cs, 2):
                adj[a].add(b)
                adj[b].add(a)
        space._caches[key] = {c: tuple(sorted(s)) for c, s in adj.items()}
    return space._caches[key]


def k_cell_distance(space: DiscreteSpace, x: int, y: int, i: int):
    """Minimum length of an (i-1)-connected i-cell sequence from x to y."""
    space.require_vertex(x)
    space.require_vertex(y)
    if not (1 <= i <= space.top_dim):
        raise InputError("level %d outside 1..%d" % (i, space.top_dim))
    if i == 1:
        return graph_distance(space, x, y)
    if x == y:
        return 0
    sources = space.cells_containing(x, i)
    targets = set(space.cells_containing(y, i))
    if not sources or not targets:
        return UNREACHABLE
    adj = _cell_adjacency(space, i)
    dist = {c: 1 for c in sources}
    queue = deque(sources)
    while queue:
        c = queue.popleft()
        if c in targets:
            return dist[c]
        for n in adj[c]:
            if n not in dist:
                dist[n] = dist[c] + 1
                queue.append(n)
    return UNREACHABLE


def is_triangulated(space: DiscreteSpace) -> bool:
    """Every i-cell has exactly i+1 vertices (all cells are simplices)."""
    return all(len(c[1]) == c[0] + 1
               for c in space.cells if c[0] >= 2)


def verify_distance_equality(space: DiscreteSpace) -> CheckReport:
    """Exhaustively confirm graph distance equals every i-cell distance.

    Applies to triangulated spaces only; quadrilateral cells break the
    equality, so non-triangulated input is a precondition error.
    """
    if not is_triangulated(space):
        raise PreconditionError("space is not triangulated")
    report = CheckReport(True)
    for x, y in itertools.combinations(range(space.n_vertices), 2):
        d1 = graph_distance(space, x, y)
        for i in range(2, space.top_dim + 1):
            di = k_cell_distance(space, x, y, i)
            if di != d1:
                report.add("d(%d, %d) = %s but %d-cell distance is %s"
                           % (x, y, d1, i, di))
                return report
    return report
