"""Discrete spaces: a finite graph with per-dimension cell registries.

A space is a graph ``G = (V, E)`` together with registries ``U_2, ..., U_k``
of cells.  An ``i``-cell is recorded by its vertex set and by its boundary,
a closed minimal cycle of ``(i-1)``-cells.  Vertices are dense integers,
edges are sorted pairs, and a cell id is the pair ``(dim, sorted vertex
tuple)``, so every iteration order in the package is deterministic.

Construction enforces the structural invariants once; afterwards a space is
immutable and every query here is a pure function, safe to run concurrently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError, PreconditionError

# A cell id is (dim, tuple of sorted vertex ids).
CellId = tuple


def edge_key(u: int, v: int) -> tuple:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Cell:
    """One i-cell: identity, dimension, vertex set, boundary cells.

    ``loop`` is only populated for 2-cells: the boundary vertices in cyclic
    order, giving the cell its reference orientation.
    """

    dim: int
    verts: tuple
    boundary: tuple
    loop: tuple | None = None

    @property
    def id(self) -> CellId:
        return (self.dim, self.verts)


@dataclass
class CheckReport:
    """Outcome of a verification pass: overall flag plus human-readable findings."""

    ok: bool
    problems: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, msg: str):
        self.ok = False
        self.problems.append(msg)


@dataclass(frozen=True)
class CellChain:
    """A collection of same-dimension cells: a path, a cycle, or a bare chain.

    Ordered dim-1 chains store the vertex walk in ``verts`` (no repetition of
    the closing vertex); their edge cells are derived.  Unordered chains store
    cell ids only.  A single-vertex "path" has one vertex and no cells.
    """

    dim: int
    cells: tuple
    ordered: bool = False
    closed: bool = False
    verts: tuple | None = None

    @staticmethod
    def path(space: "DiscreteSpace", vertices, closed: bool = False) -> "CellChain":
        vertices = tuple(vertices)
        if len(vertices) == 0:
            raise InputError("empty vertex path")
        if len(set(vertices)) != len(vertices):
            raise InputError("vertex path repeats a vertex: %r" % (vertices,))
        for v in vertices:
            space.require_vertex(v)
        pairs = list(zip(vertices, vertices[1:]))
        if closed:
            if len(vertices) < 3:
                raise InputError("closed path needs at least 3 vertices")
            pairs.append((vertices[-1], vertices[0]))
        cells = []
        for u, v in pairs:
            e = edge_key(u, v)
            if e not in space.edges:
                raise InputError("path step (%d, %d) is not an edge" % (u, v))
            cells.append((1, e))
        return CellChain(1, tuple(cells), ordered=True, closed=closed,
                         verts=vertices)

    @staticmethod
    def of_cells(space: "DiscreteSpace", dim: int, cell_ids, closed: bool = False) -> "CellChain":
        ids = tuple(sorted(set(cell_ids)))
        for cid in ids:
            if cid not in space.cells or cid[0] != dim:
                raise InputError("unknown %d-cell %r" % (dim, cid))
        return CellChain(dim, ids, ordered=False, closed=closed)

    def vertex_set(self) -> frozenset:
        if self.verts is not None:
            return frozenset(self.verts)
        return frozenset(v for cid in self.cells for v in cid[1])

    def edge_set(self) -> frozenset:
        if self.dim != 1:
            raise InputError("edge_set is only defined for dim-1 chains")
        return frozenset(cid[1] for cid in self.cells)

    def reversed(self) -> "CellChain":
        if self.verts is None:
            return self
        return CellChain(self.dim, tuple(reversed(self.cells)), self.ordered,
                         self.closed, tuple(reversed(self.verts)))


@dataclass
class Subcomplex:
    """A downward-closed set of cells of a space, grouped by dimension."""

    by_dim: dict

    def cells(self):
        for d in sorted(self.by_dim):
            yield from self.by_dim[d]

    def vertices(self) -> frozenset:
        return frozenset(cid[1][0] for cid in self.by_dim.get(0, ()))

    def edges(self) -> frozenset:
        return frozenset(cid[1] for cid in self.by_dim.get(1, ()))

    def __contains__(self, cid) -> bool:
        return cid in self.by_dim.get(cid[0], ())


class DiscreteSpace:
    """The universe: graph plus registries, immutable after construction."""

    def __init__(self, n_vertices: int, edges, cells_by_dim: dict,
                 boundaries: dict | None = None, oriented: bool | None = None):
        """Build and validate a space.

        ``cells_by_dim`` maps dim >= 2 to an iterable of vertex tuples.
        ``boundaries`` may map a cell id to an explicit tuple of boundary
        cell ids; otherwise the boundary is derived from the registries.
        ``oriented`` declares orientability for spaces of dimension >= 3;
        for 2-dimensional spaces a consistency pass computes it.
        """
        if n_vertices <= 0:
            raise InputError("a space needs at least one vertex")
        self.n_vertices = n_vertices
        self._caches: dict = {}
        self.edges = frozenset(edge_key(u, v) for u, v in edges)
        for u, v in self.edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices) or u == v:
                raise InputError("bad edge (%d, %d)" % (u, v))

        self.cells: dict = {}
        for v in range(n_vertices):
            c = Cell(0, (v,), ())
            self.cells[c.id] = c
        for e in sorted(self.edges):
            c = Cell(1, e, ((0, (e[0],)), (0, (e[1],))))
            self.cells[c.id] = c

        dims = sorted(d for d in cells_by_dim if cells_by_dim[d])
        if any(d < 2 for d in dims):
            raise InputError("cells_by_dim only holds dimensions >= 2")
        self.top_dim = max(dims) if dims else 1
        boundaries = boundaries or {}

        for d in dims:
            seen = set()
            for verts in cells_by_dim[d]:
                verts = tuple(sorted(set(verts)))
                if verts in seen:
                    raise InputError("duplicate %d-cell %r" % (d, verts))
                seen.add(verts)
                cid = (d, verts)
                bnd = boundaries.get(cid)
                if bnd is None:
                    bnd = tuple(sorted(
                        c for c in self.cells
                        if c[0] == d - 1 and set(c[1]) <= set(verts)))
                else:
                    bnd = tuple(sorted(bnd))
                self._validate_boundary(d, verts, bnd)
                loop = self._boundary_loop(verts, bnd) if d == 2 else None
                self.cells[cid] = Cell(d, verts, bnd, loop)

        self._check_well_attachment()
        if self.top_dim == 2:
            self.oriented = self._orient_two_cells()
        else:
            self.oriented = bool(oriented) if oriented is not None else False

    # -- construction-time validation -------------------------------------

    def _validate_boundary(self, d: int, verts: tuple, bnd: tuple):
        cid = (d, verts)
        if not bnd:
            raise InputError("%r has an empty boundary" % (cid,))
        for b in bnd:
            if b not in self.cells or b[0] != d - 1:
                raise InputError("%r: boundary entry %r is not a known %d-cell"
                                 % (cid, b, d - 1))
        cover = set()
        for b in bnd:
            cover.update(b[1])
        if cover != set(verts):
            raise InputError("%r: boundary cells cover %r, not the cell's "
                             "vertex set" % (cid, tuple(sorted(cover))))
        if d == 2:
            # Boundary must be a simple closed edge cycle with no chords in G.
            deg: dict = {}
            for b in bnd:
                for v in b[1]:
                    deg[v] = deg.get(v, 0) + 1
            if any(k != 2 for k in deg.values()) or len(bnd) != len(verts):
                raise InputError("%r: boundary edges do not form a simple "
                                 "closed cycle" % (cid,))
            for u, v in itertools.combinations(verts, 2):
                e = edge_key(u, v)
                if e in self.edges and (1, e) not in bnd:
                    raise InputError("%r: chord %r makes the boundary cycle "
                                     "non-minimal" % (cid, e))
        else:
            # Each (d-2)-face of the boundary lies in exactly two boundary
            # cells (a closed pseudo-cycle), the cycle is connected, and no
            # proper subset of it is itself closed.
            if not self._is_closed_cycle(bnd):
                raise InputError("%r: boundary is not a closed cycle of "
                                 "%d-cells" % (cid, d - 1))
            if len(bnd) <= 20:
                for r in range(1, len(bnd)):
                    for sub in itertools.combinations(bnd, r):
                        if self._is_closed_cycle(sub):
                            raise InputError(
                                "%r: boundary contains the proper sub-cycle %r"
                                % (cid, sub))

    def _is_closed_cycle(self, cells) -> bool:
        """True iff every next-lower face of ``cells`` lies in exactly two of
        them and the cells are connected through those shared faces."""
        cells = tuple(cells)
        if not cells:
            return False
        count: dict = {}
        for c in cells:
            for f in self.cells[c].boundary:
                count[f] = count.get(f, 0) + 1
        if any(n != 2 for n in count.values()):
            return False
        adj: dict = {c: set() for c in cells}
        by_face: dict = {}
        for c in cells:
            for f in self.cells[c].boundary:
                by_face.setdefault(f, []).append(c)
        for f, cs in by_face.items():
            for a, b in itertools.combinations(cs, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen = {cells[0]}
        stack = [cells[0]]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(cells)

    def _boundary_loop(self, verts: tuple, bnd: tuple) -> tuple:
        """Order a 2-cell's boundary edges into a canonical vertex cycle."""
        nbr: dict = {v: [] for v in verts}
        for _, (u, v) in bnd:
            nbr[u].append(v)
            nbr[v].append(u)
        start = min(verts)
        loop = [start, min(nbr[start])]
        while len(loop) < len(verts):
            prev, cur = loop[-2], loop[-1]
            nxt = [w for w in nbr[cur] if w != prev]
            loop.append(nxt[0])
        return tuple(loop)

    def _check_well_attachment(self):
        """Any two same-dimension cells intersect in a connected vertex set."""
        for d in range(2, self.top_dim + 1):
            same = self.cells_of_dim(d)
            for a, b in itertools.combinations(same, 2):
                inter = set(a[1]) & set(b[1])
                if len(inter) <= 1:
                    continue
                if not self._induces_connected(inter):
                    raise InputError(
                        "cells %r and %r are not well-attached: their "
                        "intersection %r induces a disconnected subgraph"
                        % (a, b, tuple(sorted(inter))))

    def _induces_connected(self, vs: set) -> bool:
        vs = set(vs)
        start = next(iter(vs))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.vertex_neighbors(v):
                if w in vs and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == vs

    def _orient_two_cells(self) -> bool:
        """Flip 2-cell loops so adjacent cells traverse shared edges in
        opposite directions.  Returns False if no consistent choice exists."""
        by_edge: dict = {}
        for cid in self.cells_of_dim(2):
            for b in self.cells[cid].boundary:
                by_edge.setdefault(b, []).append(cid)
        if any(len(cs) > 2 for cs in by_edge.values()):
            return False

        def direction(loop, e):
            # +1 if the loop walks e = (u, v) from u to v, else -1.
            u, v = e
            n = len(loop)
            i = loop.index(u)
            return 1 if loop[(i + 1) % n] == v else -1

        flipped: dict = {}
        for root in self.cells_of_dim(2):
            if root in flipped:
                continue
            flipped[root] = False
            queue = [root]
            while queue:
                cur = queue.pop(0)
                cur_loop = self.cells[cur].loop
                if flipped[cur]:
                    cur_loop = tuple(reversed(cur_loop))
                for b in self.cells[cur].boundary:
                    for other in by_edge[b]:
                        if other == cur:
                            continue
                        want = -direction(cur_loop, b[1])
                        have = direction(self.cells[other].loop, b[1])
                        need_flip = (have != want)
                        if other not in flipped:
                            flipped[other] = need_flip
                            queue.append(other)
                        elif flipped[other] != need_flip:
                            return False
        for cid, f in flipped.items():
            if f:
                c = self.cells[cid]
                self.cells[cid] = Cell(c.dim, c.verts, c.boundary,
                                       tuple(reversed(c.loop)))
        return True

    # -- basic accessors ---------------------------------------------------

    def require_vertex(self, v: int):
        if not (0 <= v < self.n_vertices):
            raise InputError("unknown vertex id %r" % (v,))

    def cells_of_dim(self, d: int) -> list:
        key = ("dims", d)
        if key not in self._caches:
            self._caches[key] = sorted(c for c in self.cells if c[0] == d)
        return self._caches[key]

    def vertex_neighbors(self, v: int) -> tuple:
        key = "nbrs"
        if key not in self._caches:
            nbrs = [[] for _ in range(self.n_vertices)]
            for u, w in sorted(self.edges):
                nbrs[u].append(w)
                nbrs[w].append(u)
            self._caches[key] = [tuple(sorted(x)) for x in nbrs]
        return self._caches[key][v]

    def cells_containing(self, v: int, dim: int | None = None) -> list:
        key = "vert2cells"
        if key not in self._caches:
            m: dict = {u: [] for u in range(self.n_vertices)}
            for cid in sorted(self.cells):
                for u in cid[1]:
                    m[u].append(cid)
            self._caches[key] = m
        cs = self._caches[key][v]
        if dim is None:
            return cs
        return [c for c in cs if c[0] == dim]

    def cofaces(self, cid: CellId) -> list:
        """Cells of dimension dim+1 whose boundary contains ``cid``."""
        key = "cofaces"
        if key not in self._caches:
            m: dict = {}
            for c in sorted(self.cells):
                for b in self.cells[c].boundary:
                    m.setdefault(b, []).append(c)
            self._caches[key] = m
        return self._caches[key].get(cid, [])


# -- operations ------------------------------------------------------------


def partial_graph(space: DiscreteSpace, s) -> frozenset:
    """Every edge of G with both endpoints in the vertex set ``s``."""
    s = set(s)
    for v in s:
        space.require_vertex(v)
    return frozenset(e for e in space.edges if e[0] in s and e[1] in s)


def is_minimal_cycle(space: DiscreteSpace, chain: CellChain) -> bool:
    """True iff no proper vertex subset of the closed cycle induces a cycle.

    Equivalent to the cycle having no chord in G: a chord yields a shorter
    cycle on a proper subset, and without chords every proper subset induces
    a forest of arcs.
    """
    if chain.dim != 1 or not chain.ordered or not chain.closed:
        raise InputError("is_minimal_cycle expects an ordered closed 1-chain")
    vs = chain.verts
    on_cycle = chain.edge_set()
    for u, v in itertools.combinations(vs, 2):
        e = edge_key(u, v)
        if e in space.edges and e not in on_cycle:
            return False
    return True


def star(space: DiscreteSpace, xs) -> Subcomplex:
    """All cells whose vertex set meets ``xs``, closed under boundaries."""
    xs = set(xs)
    if not xs:
        raise InputError("star of an empty vertex set")
    for v in xs:
        space.require_vertex(v)
    picked: set = set()
    stack = []
    for v in sorted(xs):
        for cid in space.cells_containing(v):
            if cid not in picked:
                picked.add(cid)
                stack.append(cid)
    while stack:
        cid = stack.pop()
        for b in space.cells[cid].boundary:
            if b not in picked:
                picked.add(b)
                stack.append(b)
    by_dim: dict = {}
    for cid in sorted(picked):
        by_dim.setdefault(cid[0], []).append(cid)
    return Subcomplex({d: tuple(cs) for d, cs in by_dim.items()})


def link(space: DiscreteSpace, xs) -> Subcomplex:
    """The star of ``xs`` with every cell touching ``xs`` removed."""
    xs = set(xs)
    st = star(space, xs)
    by_dim: dict = {}
    for cid in st.cells():
        if not xs.intersection(cid[1]):
            by_dim.setdefault(cid[0], []).append(cid)
    return Subcomplex({d: tuple(cs) for d, cs in by_dim.items()})


def _edge_components(edges) -> list:
    """Connected components of an edge set, as lists of vertices."""
    adj: dict = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    comps = []
    seen: set = set()
    for v in sorted(adj):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def edge_set_shape(edges) -> str:
    """Classify an edge set: 'path', 'cycle', 'empty', or 'other'."""
    edges = set(edges)
    if not edges:
        return "empty"
    deg: dict = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    comps = _edge_components(edges)
    if len(comps) != 1:
        return "other"
    if all(d == 2 for d in deg.values()):
        return "cycle" if len(edges) == len(deg) else "other"
    ends = [v for v, d in deg.items() if d == 1]
    if len(ends) == 2 and all(d <= 2 for d in deg.values()):
        return "path"
    return "other"


def check_regular(space: DiscreteSpace, k: int | None = None) -> CheckReport:
    """Verify the four regularity clauses of a k-manifold candidate.

    (1) top cells pairwise connected through shared (k-1)-cells,
    (2) every (k-1)-cell lies in one or two k-cells,
    (3) nothing above dimension k,
    (4) every vertex link is connected at the (k-1)-cell level.
    Violations are reported, never raised.
    """
    k = space.top_dim if k is None else k
    report = CheckReport(True)
    if k != space.top_dim:
        report.add("requested dimension %d but the space has top dimension %d"
                   % (k, space.top_dim))
        return report

    top = space.cells_of_dim(k)
    # clause 2 first: face incidence counts feed clause 1's adjacency.
    by_face: dict = {}
    for cid in top:
        for b in space.cells[cid].boundary:
            by_face.setdefault(b, []).append(cid)
    for f in space.cells_of_dim(k - 1):
        n = len(by_face.get(f, ()))
        if n not in (1, 2):
            report.add("clause 2: %d-cell %r lies in %d %d-cells"
                       % (k - 1, f, n, k))

    if top:
        adj: dict = {c: set() for c in top}
        for f, cs in by_face.items():
            for a, b in itertools.combinations(cs, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen = {top[0]}
        stack = [top[0]]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(top):
            report.add("clause 1: %d-cells are not (k-1)-connected "
                       "(%d of %d reachable)" % (k, len(seen), len(top)))
    else:
        report.add("clause 1: the space has no %d-cells" % k)

    # clause 3 holds by construction (top_dim is the highest registry), but
    # confirm nothing sneaked in above k.
    if any(c[0] > k for c in space.cells):
        report.add("clause 3: cells above dimension %d present" % k)

    if k == 1:
        # links in a 1-manifold are vertex pairs (0-spheres); there is no
        # connectivity left to check
        return report
    for v in range(space.n_vertices):
        lk = link(space, {v})
        cells = lk.by_dim.get(k - 1, ())
        if not cells:
            if space.cells_containing(v, 1):
                report.add("clause 4: link of vertex %d has no %d-cells"
                           % (v, k - 1))
            continue
        ladj: dict = {c: set() for c in cells}
        lby_face: dict = {}
        for c in cells:
            faces = space.cells[c].boundary if k - 1 >= 1 else ()
            for f in faces:
                lby_face.setdefault(f, []).append(c)
        for f, cs in lby_face.items():
            for a, b in itertools.combinations(cs, 2):
                ladj[a].add(b)
                ladj[b].add(a)
        seen = {cells[0]}
        stack = [cells[0]]
        while stack:
            for nxt in ladj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(cells):
            report.add("clause 4: link of vertex %d is disconnected" % v)
    return report


def is_closed_manifold(space: DiscreteSpace) -> bool:
    """True iff every (k-1)-cell lies in exactly two k-cells."""
    reg = check_regular(space)
    if not reg:
        raise PreconditionError("space is not a regular manifold: %s"
                                % "; ".join(reg.problems))
    k = space.top_dim
    for f in space.cells_of_dim(k - 1):
        if len([c for c in space.cofaces(f)]) != 2:
            return False
    return True


def is_discrete_curve(space: DiscreteSpace, chain: CellChain) -> bool:
    """True iff no cell of dimension >= 2 has all its vertices on the chain."""
    vs = chain.vertex_set()
    for d in range(2, space.top_dim + 1):
        for cid in space.cells_of_dim(d):
            if set(cid[1]) <= vs:
                return False
    return True


def orientation_of_cycle(space: DiscreteSpace, cycle: CellChain, sub_arc) -> str:
    """'cw' if ``sub_arc`` follows the cycle's stored orientation, else 'ccw'."""
    if not (cycle.ordered and cycle.closed and cycle.verts):
        raise InputError("reference cycle must be an ordered closed chain")
    arc = tuple(sub_arc)
    if len(arc) < 2:
        raise InputError("sub_arc needs at least two vertices")
    ring = cycle.verts
    n = len(ring)
    pos = {v: i for i, v in enumerate(ring)}
    if any(v not in pos for v in arc):
        raise InputError("sub_arc leaves the cycle")
    fwd = all(pos[arc[i + 1]] == (pos[arc[i]] + 1) % n for i in range(len(arc) - 1))
    if fwd:
        return "cw"
    bwd = all(pos[arc[i + 1]] == (pos[arc[i]] - 1) % n for i in range(len(arc) - 1))
    if bwd:
        return "ccw"
    raise InputError("sub_arc is not an arc of the cycle")
