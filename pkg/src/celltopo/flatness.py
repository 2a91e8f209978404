"""Local flatness of curves and submanifolds, focal points, and collars.

A chain C embedded in a space is locally flat when every vertex pair of C
satisfies one of three conditions: the pair is adjacent along C; every
cell-distance level keeps them at least 3 apart; or some level puts them at
distance exactly 2 and every off-chain vertex mediating such a length-2
cell path is a focal point, meaning its link meets C in one connected arc
through both vertices.  A collar is the pair of distance-1 sheets flanking
a flat chain; flatness and collar existence decide each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import (CellChain, CheckReport, DiscreteSpace, edge_key,
                        link)
from .errors import InputError, PreconditionError
from .metrics import k_cell_distance


def _chain_edges(space: DiscreteSpace, chain: CellChain) -> frozenset:
    """The 1-cells belonging to the chain (for dim >= 2, its edge closure)."""
    if chain.dim == 1:
        return chain.edge_set()
    edges = set()
    stack = list(chain.cells)
    seen = set(stack)
    while stack:
        cid = stack.pop()
        if cid[0] == 1:
            edges.add(cid[1])
            continue
        for b in space.cells[cid].boundary:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return frozenset(edges)


def _chain_cell_closure(space: DiscreteSpace, chain: CellChain) -> frozenset:
    """All cells of the chain together with their iterated boundaries."""
    out = set()
    if chain.dim == 1 and chain.verts is not None:
        out.update((1, e) for e in chain.edge_set())
        out.update((0, (v,)) for v in chain.verts)
        return frozenset(out)
    stack = list(chain.cells)
    while stack:
        cid = stack.pop()
        if cid in out:
            continue
        out.add(cid)
        stack.extend(space.cells[cid].boundary)
    return frozenset(out)


def _intersection_is_arc(space: DiscreteSpace, mediator: int,
                         chain_verts: frozenset, chain_edges: frozenset,
                         p: int, q: int) -> bool:
    """Does link(mediator) meet the chain in one connected piece with at
    least one edge, containing both p and q?

    A connected subgraph of a simple curve is an arc, or the whole curve
    when the curve is closed and fully seen; both count here.
    """
    lk = link(space, {mediator})
    ivs = sorted(v for v in lk.vertices() if v in chain_verts)
    ies = sorted(e for e in lk.edges() if e in chain_edges)
    if not ies or p not in ivs or q not in ivs:
        return False
    comp = {ies[0][0]}
    grew = True
    while grew:
        grew = False
        for u, v in ies:
            if (u in comp) != (v in comp):
                comp.update((u, v))
                grew = True
    return all(v in comp for v in ivs)


def _level2_mediators(space: DiscreteSpace, p: int, q: int, i: int):
    """Vertices on the shared (i-1)-cell of any length-2 i-cell path p..q."""
    meds = set()
    if i == 1:
        np_ = set(space.vertex_neighbors(p))
        meds.update(w for w in space.vertex_neighbors(q) if w in np_)
        return meds
    cells_p = space.cells_containing(p, i)
    cells_q = space.cells_containing(q, i)
    for a in cells_p:
        ba = set(space.cells[a].boundary)
        for b in cells_q:
            if a == b:
                continue
            for f in space.cells[b].boundary:
                if f in ba:
                    meds.update(f[1])
    return meds


def _pair_violation(space: DiscreteSpace, chain_verts, chain_edges,
                    p: int, q: int, levels) -> str | None:
    """None when the pair satisfies one of the flatness conditions,
    otherwise a description of the failure."""
    if edge_key(p, q) in chain_edges:
        return None
    dists = {i: k_cell_distance(space, p, q, i) for i in levels}
    if all(d >= 3 for d in dists.values()):
        return None
    twos = sorted(i for i, d in dists.items() if d == 2)
    if not twos:
        bad = min((i for i, d in dists.items() if d < 3),
                  key=lambda i: (dists[i], i))
        return ("pair (%d, %d): %d-cell distance %s without adjacency in "
                "the chain" % (p, q, bad, dists[bad]))
    for i in twos:
        for m in sorted(_level2_mediators(space, p, q, i)):
            if m in chain_verts:
                continue
            if not _intersection_is_arc(space, m, chain_verts, chain_edges,
                                        p, q):
                return ("pair (%d, %d): mediator %d at level %d is not a "
                        "focal point" % (p, q, m, i))
    return None


def subset_flatness(space: DiscreteSpace, verts, edges,
                    levels=None) -> CheckReport:
    """The pair conditions applied to a bare vertex/edge set.

    The set need not be a connected curve; the flattening construction in
    the separation module checks path-submanifold intersections this way.
    """
    verts = frozenset(verts)
    edges = frozenset(edges)
    if levels is None:
        levels = tuple(range(1, space.top_dim + 1))
    report = CheckReport(True)
    for p, q in itertools.combinations(sorted(verts), 2):
        msg = _pair_violation(space, verts, edges, p, q, levels)
        if msg is not None:
            report.add(msg)
    return report


def _flatness_report(space: DiscreteSpace, chain: CellChain,
                     levels) -> CheckReport:
    return subset_flatness(space, chain.vertex_set(),
                           _chain_edges(space, chain), levels)


def is_locally_flat_triangulated(space: DiscreteSpace,
                                 chain: CellChain) -> CheckReport:
    """Flatness for triangulated spaces: only graph distance matters."""
    from .metrics import is_triangulated
    if not is_triangulated(space):
        raise PreconditionError("space is not triangulated")
    _require_simple(space, chain)
    return _flatness_report(space, chain, levels=(1,))


def is_locally_flat(space: DiscreteSpace, chain: CellChain) -> CheckReport:
    """Flatness over every cell-distance level up to the space dimension."""
    if chain.dim >= space.top_dim:
        raise InputError("chain dimension %d must be below the space "
                         "dimension %d" % (chain.dim, space.top_dim))
    _require_simple(space, chain)
    return _flatness_report(space, chain,
                            levels=tuple(range(1, space.top_dim + 1)))


def _require_simple(space: DiscreteSpace, chain: CellChain):
    if chain.dim == 1:
        if chain.verts is None:
            raise InputError("curve chains must be ordered vertex paths")
        return
    # Submanifold chains must be closed pseudo-manifolds: every (dim-1)-face
    # in exactly two chain cells.
    count: dict = {}
    for cid in chain.cells:
        for f in space.cells[cid].boundary:
            count[f] = count.get(f, 0) + 1
    if chain.closed and any(n != 2 for n in count.values()):
        raise InputError("chain is not a closed pseudo-manifold")


def find_focal_points(space: DiscreteSpace, chain: CellChain) -> list:
    """All off-chain vertices whose link meets the chain in an arc of two
    or more edges, each paired with that arc as an ordered vertex tuple."""
    _require_simple(space, chain)
    verts = chain.vertex_set()
    edges = _chain_edges(space, chain)
    out = []
    for a in range(space.n_vertices):
        if a in verts:
            continue
        lk = link(space, {a})
        ies = sorted(e for e in lk.edges() if e in edges)
        ivs = sorted(v for v in lk.vertices() if v in verts)
        if len(ies) < 2:
            continue
        arc = _order_arc(ies)
        if arc is None or set(ivs) != set(arc):
            continue
        out.append((a, arc))
    return out


def _order_arc(edges) -> tuple | None:
    """Order an edge set into a vertex walk if it is a simple path or cycle."""
    adj: dict = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(ns) > 2 for ns in adj.values()):
        return None
    ends = sorted(v for v, ns in adj.items() if len(ns) == 1)
    if len(ends) == 2:
        walk = [ends[0]]
    elif not ends:
        start = min(adj)
        walk = [start, min(adj[start])]
    else:
        return None
    while True:
        cur = walk[-1]
        nxt = [w for w in adj[cur]
               if len(walk) < 2 or w != walk[-2]]
        if not nxt:
            break
        if nxt[0] == walk[0]:
            break
        walk.append(nxt[0])
        if len(walk) > len(adj):
            return None
    if len(walk) != len(adj):
        return None
    return tuple(walk)


@dataclass(frozen=True)
class CollarCertificate:
    """A chain with its flanking sheets and a distance-1 witness.

    Sheets are disjoint vertex sets at cell distance one from the base;
    ``witness`` maps each sheet vertex to a base vertex it shares a cell
    with.  Curves carry two sheets.  A closed submanifold of dimension two
    or more may have one sheet when one side has no off-chain vertices.
    """

    base: CellChain
    sheets: tuple
    witness: dict


def _side_cells(space: DiscreteSpace, chain: CellChain) -> list:
    """Top cells carrying the collar: those containing a chain cell of
    codimension one in them, or an interior chain vertex."""
    k = space.top_dim
    verts = chain.vertex_set()
    if chain.dim == 1:
        if chain.closed:
            interior = set(chain.verts)
        else:
            interior = set(chain.verts[1:-1])
        edges = chain.edge_set()
        picked = []
        for cid in space.cells_of_dim(k):
            cverts = set(cid[1])
            has_edge = any(set(e) <= cverts and
                           (1, e) in _faces_of(space, cid, 1)
                           for e in edges)
            if has_edge or interior & cverts:
                picked.append(cid)
        return picked
    chain_cells = set(chain.cells)
    picked = []
    for cid in space.cells_of_dim(k):
        faces = set(space.cells[cid].boundary)
        if faces & chain_cells or verts & set(cid[1]):
            picked.append(cid)
    return picked


def _faces_of(space: DiscreteSpace, cid, dim: int) -> set:
    out = set()
    stack = [cid]
    while stack:
        c = stack.pop()
        if c[0] == dim:
            out.add(c)
            continue
        stack.extend(space.cells[c].boundary)
    return out


def _split_sides(space: DiscreteSpace, chain: CellChain, cells: list) -> list:
    """Group the side cells into components; crossing the chain is not
    allowed, so adjacency uses only shared faces that do not lie on it."""
    closure = _chain_cell_closure(space, chain)
    adj = {c: set() for c in cells}
    by_face: dict = {}
    for c in cells:
        for f in space.cells[c].boundary:
            by_face.setdefault(f, []).append(c)
    for f, cs in by_face.items():
        if f in closure:
            continue
        if chain.dim == 1 and set(f[1]) <= chain.vertex_set():
            continue
        for a, b in itertools.combinations(cs, 2):
            adj[a].add(b)
            adj[b].add(a)
    comps = []
    seen = set()
    for c in sorted(cells):
        if c in seen:
            continue
        comp = {c}
        stack = [c]
        while stack:
            for n in adj[stack.pop()]:
                if n not in comp:
                    comp.add(n)
                    stack.append(n)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def build_collar(space: DiscreteSpace, chain: CellChain) -> CollarCertificate:
    """Construct the collar of a locally flat chain.

    The curve's flanking cells split into two sides when no boundary sheet
    pinches; the off-chain vertices of each side form the sheets.  Not
    locally flat means no collar exists, reported as a precondition error.
    """
    flat = is_locally_flat(space, chain)
    if not flat:
        raise PreconditionError("chain is not locally flat: %s"
                                % "; ".join(flat.problems[:3]))
    verts = chain.vertex_set()
    cells = _side_cells(space, chain)
    comps = _split_sides(space, chain, cells)
    sheets = []
    for comp in comps:
        sheet = sorted({v for cid in comp for v in cid[1]} - verts)
        sheets.append(frozenset(sheet))
    if chain.dim == 1:
        if len(comps) != 2 or any(not s for s in sheets):
            raise PreconditionError(
                "no two-sided collar: the chain has %d side(s) with sheet "
                "sizes %s (curves bounding a cell have a vertex-free side)"
                % (len(comps), [len(s) for s in sheets]))
    else:
        sheets = [s for s in sheets if s]
        if not sheets:
            raise PreconditionError("no side of the chain has off-chain "
                                    "vertices to carry a sheet")
    sheets.sort(key=lambda s: min(s))
    witness = {}
    for sheet in sheets:
        for v in sorted(sheet):
            partners = sorted(
                w for cid in space.cells_containing(v)
                for w in cid[1] if w in verts)
            witness[v] = partners[0]
    cert = CollarCertificate(chain, tuple(sheets), witness)
    ok = verify_collar(space, chain, cert)
    if not ok:
        raise PreconditionError("constructed collar failed verification: %s"
                                % "; ".join(ok.problems))
    return cert


def verify_collar(space: DiscreteSpace, chain: CellChain,
                  cert: CollarCertificate) -> CheckReport:
    """Re-check every certificate invariant, independent of construction."""
    report = CheckReport(True)
    verts = chain.vertex_set()
    if chain.dim == 1 and len(cert.sheets) != 2:
        report.add("a curve collar needs two sheets, certificate has %d"
                   % len(cert.sheets))
    for i, sheet in enumerate(cert.sheets):
        if not sheet:
            report.add("sheet %d is empty" % i)
            continue
        if sheet & verts:
            report.add("sheet %d meets the base chain" % i)
        induced = [e for e in space.edges
                   if e[0] in sheet and e[1] in sheet]
        if len(sheet) > 1:
            shape = _sheet_shape(sheet, induced)
            if chain.dim == 1 and shape not in ("path", "cycle"):
                report.add("sheet %d self-intersects (induced shape: %s)"
                           % (i, shape))
            elif chain.dim >= 2 and shape == "disconnected":
                report.add("sheet %d is disconnected" % i)
        for v in sorted(sheet):
            w = cert.witness.get(v)
            if w is None or w not in verts:
                report.add("sheet vertex %d has no base witness" % v)
            elif not any(w in cid[1] for cid in space.cells_containing(v)):
                report.add("sheet vertex %d is not at cell distance 1 from "
                           "its witness %d" % (v, w))
    for a, b in itertools.combinations(range(len(cert.sheets)), 2):
        if cert.sheets[a] & cert.sheets[b]:
            report.add("sheets %d and %d intersect" % (a, b))
    return report


def _sheet_shape(sheet, induced_edges) -> str:
    deg = {v: 0 for v in sheet}
    for u, v in induced_edges:
        deg[u] += 1
        deg[v] += 1
    # connectivity over induced edges
    start = min(sheet)
    comp = {start}
    grew = True
    while grew:
        grew = False
        for u, v in induced_edges:
            if (u in comp) != (v in comp):
                comp.update((u, v))
                grew = True
    if comp != set(sheet):
        return "disconnected"
    if all(d == 2 for d in deg.values()) and len(induced_edges) == len(sheet):
        return "cycle"
    ends = [v for v, d in deg.items() if d <= 1]
    if all(d <= 2 for d in deg.values()) and len(ends) == 2:
        return "path"
    return "branched"
