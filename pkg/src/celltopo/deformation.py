"""Curve deformation: XorSum algebra and gradually varied moves.

Two curves are gradually varied when each can be matched to the other by
moving every point at most one cell: every non-end vertex of one lies on
the other or shares a 2-cell (spanned by the two curves' vertices) with
it, and every non-end edge not shared lies in such a 2-cell that carries
an edge of the other curve.  A gradually varied move decomposes into
single-cell moves, each the XorSum with one 2-cell boundary.  Side
variation additionally forbids cross-overs, which are detected through
orientation tags in the links of shared vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import CellChain, CheckReport, DiscreteSpace, edge_key
from .errors import InputError, PreconditionError

MOVE_GRADUAL = "gradual"
MOVE_MINIMAL = "minimal"
MOVE_SIDE_GRADUAL = "side-gradual"


@dataclass(frozen=True)
class DeformationTrace:
    """A sequence of chains whose consecutive pairs differ by declared moves.

    ``moves[t]`` is the set of cells realizing the XorSum between steps t
    and t+1; minimal traces use exactly one cell per move.
    """

    steps: tuple
    moves: tuple
    kind: str

    def __post_init__(self):
        if self.steps and len(self.moves) != len(self.steps) - 1:
            raise InputError("a trace with %d steps needs %d move sets"
                             % (len(self.steps), len(self.steps) - 1))


def xor_sum(space: DiscreteSpace, a: CellChain, b: CellChain) -> CellChain:
    """Symmetric difference of the two chains' cell sets."""
    if a.dim != b.dim:
        raise InputError("xor_sum needs chains of one dimension")
    sa, sb = set(a.cells), set(b.cells)
    cells = tuple(sorted(sa.symmetric_difference(sb)))
    closed = _is_even_chain(space, a.dim, cells)
    return CellChain(a.dim, cells, ordered=False, closed=closed)


def _is_even_chain(space: DiscreteSpace, dim: int, cells) -> bool:
    count: dict = {}
    for cid in cells:
        for f in space.cells[cid].boundary:
            count[f] = count.get(f, 0) + 1
    return bool(cells) and all(n % 2 == 0 for n in count.values())


def _require_curve(chain: CellChain):
    if chain.dim != 1 or chain.verts is None:
        raise InputError("expected an ordered dim-1 chain")


def _nonend_verts(chain: CellChain) -> tuple:
    if chain.closed:
        return chain.verts
    return chain.verts[1:-1]


def _nonend_edges(chain: CellChain) -> tuple:
    edges = tuple(edge_key(u, v) for u, v in
                  zip(chain.verts, chain.verts[1:]))
    if chain.closed:
        edges = edges + (edge_key(chain.verts[-1], chain.verts[0]),)
        return edges
    return edges[1:-1]


def _within_one_cell(space: DiscreteSpace, x: int, y: int) -> bool:
    if x == y:
        return True
    if edge_key(x, y) in space.edges:
        return True
    return any(y in cid[1] for cid in space.cells_containing(x, 2))


def are_gradually_varied(space: DiscreteSpace, c: CellChain,
                         cp: CellChain) -> bool:
    """One-step deformability of two simple curves (or a curve and a point)."""
    _require_curve(c)
    _require_curve(cp)
    if c.closed != cp.closed and 1 not in (len(c.verts), len(cp.verts)):
        raise InputError("cannot compare a closed curve with an open one")
    if not c.closed and not cp.closed:
        # end slack: respective ends at most one cell apart, under either
        # pairing since paths carry no inherent direction
        straight = (_within_one_cell(space, c.verts[0], cp.verts[0])
                    and _within_one_cell(space, c.verts[-1], cp.verts[-1]))
        flipped = (_within_one_cell(space, c.verts[0], cp.verts[-1])
                   and _within_one_cell(space, c.verts[-1], cp.verts[0]))
        if not (straight or flipped):
            return False
    union = c.vertex_set() | cp.vertex_set()
    bridge_cells = [cid for cid in space.cells_of_dim(2)
                    if set(cid[1]) <= union]
    return (_half_varied(space, c, cp, bridge_cells)
            and _half_varied(space, cp, c, bridge_cells))


def _half_varied(space: DiscreteSpace, c: CellChain, cp: CellChain,
                 bridge_cells) -> bool:
    other_verts = cp.vertex_set()
    if len(c.verts) == 1:
        return True
    for v in _nonend_verts(c):
        if v in other_verts:
            continue
        if not any(v in cid[1] and other_verts & set(cid[1])
                   for cid in bridge_cells):
            return False
    if len(cp.verts) == 1:
        return True
    mine = set(_all_edges(c))
    theirs = set(_all_edges(cp))
    gains = theirs - mine
    for e in _nonend_edges(c):
        if e in theirs:
            continue
        ok = False
        for cid in bridge_cells:
            faces = {b[1] for b in space.cells[cid].boundary}
            if e in faces and gains & faces:
                ok = True
                break
        if not ok:
            return False
    return True


def _all_edges(chain: CellChain) -> tuple:
    if len(chain.verts) < 2:
        return ()
    edges = tuple(edge_key(u, v) for u, v in
                  zip(chain.verts, chain.verts[1:]))
    if chain.closed:
        edges = edges + (edge_key(chain.verts[-1], chain.verts[0]),)
    return edges


def edges_to_curve(space: DiscreteSpace, edges, like: CellChain | None = None):
    """Rebuild an ordered curve from an edge set; None if it is not one
    simple path or cycle.  ``like`` fixes the endpoints an open result
    must keep and the preferred start vertex."""
    edges = set(edges)
    if not edges:
        return None
    deg: dict = {}
    adj: dict = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    ends = sorted(v for v, d in deg.items() if d == 1)
    if any(d > 2 for d in deg.values()):
        return None
    if ends:
        if len(ends) != 2:
            return None
        closed = False
        if like is not None and not like.closed:
            want = {like.verts[0], like.verts[-1]}
            if set(ends) != want:
                return None
            start = like.verts[0]
        else:
            start = ends[0]
        walk = [start]
    else:
        closed = True
        start = min(deg)
        walk = [start]
    while True:
        cur = walk[-1]
        options = [w for w in sorted(adj[cur])
                   if len(walk) < 2 or w != walk[-2]]
        if closed and len(walk) >= 2:
            options = [w for w in options if w != start] or options
        if not options:
            break
        nxt = options[0]
        if closed and nxt == start:
            break
        if nxt in walk:
            return None
        walk.append(nxt)
        if len(walk) > len(deg):
            return None
    if len(walk) != len(deg):
        return None
    return CellChain.path(space, walk, closed=closed)


def cell_boundary_chain(space: DiscreteSpace, cell) -> CellChain:
    """The boundary of a 2-cell as an ordered closed curve."""
    loop = space.cells[cell].loop
    return CellChain.path(space, loop, closed=True)


def intersection_is_attaching_arc(space: DiscreteSpace, chain: CellChain,
                                  cell) -> bool:
    """Lemma-style attachment: the cell meets the curve exactly in an arc
    with at least one edge (not the whole cell boundary)."""
    faces = {b[1] for b in space.cells[cell].boundary}
    shared_edges = faces & set(_all_edges(chain))
    if not shared_edges or len(shared_edges) == len(faces):
        return False
    shared_verts = set(cell[1]) & chain.vertex_set()
    deg: dict = {}
    for u, v in shared_edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d > 2 for d in deg.values()):
        return False
    if sum(1 for d in deg.values() if d == 1) != 2:
        return False
    if shared_verts != set(deg):
        return False
    if len(shared_edges) != len(deg) - 1:
        return False
    return True


def single_cell_move(space: DiscreteSpace, chain: CellChain, cell):
    """XorSum the curve with one 2-cell boundary; None when the move is not
    an attaching-arc move or breaks curve simplicity."""
    if not intersection_is_attaching_arc(space, chain, cell):
        return None
    faces = {b[1] for b in space.cells[cell].boundary}
    new_edges = set(_all_edges(chain)).symmetric_difference(faces)
    if not new_edges:
        return None
    return edges_to_curve(space, new_edges, like=chain)


def decompose_minimal_moves(space: DiscreteSpace, c: CellChain,
                            cp: CellChain) -> DeformationTrace:
    """Split one gradually varied move into single-cell moves.

    Cells are peeled greedily in ascending id among those attached to the
    evolving curve by an arc; a breadth-first fallback covers the rare
    layouts where the greedy order wedges.
    """
    _require_curve(c)
    _require_curve(cp)
    if set(_all_edges(c)) == set(_all_edges(cp)):
        return DeformationTrace((c,), (), MOVE_MINIMAL)
    if not are_gradually_varied(space, c, cp):
        raise PreconditionError("curves are not gradually varied")
    if not c.closed and {c.verts[0], c.verts[-1]} != {cp.verts[0],
                                                      cp.verts[-1]}:
        # XorSum with a cell boundary never changes vertex degrees mod 2,
        # so shifted endpoints cannot be reached by single-cell moves; the
        # slack endpoints stay exempt from decomposition.
        raise PreconditionError("single-cell decomposition needs matching "
                                "endpoints")
    union = c.vertex_set() | cp.vertex_set()
    pool = [cid for cid in space.cells_of_dim(2) if set(cid[1]) <= union]
    target = set(_all_edges(cp))

    steps = [c]
    moves = []
    while set(_all_edges(steps[-1])) != target:
        cur = steps[-1]
        gap = set(_all_edges(cur)).symmetric_difference(target)
        best = None
        for cell in pool:
            nxt = single_cell_move(space, cur, cell)
            if nxt is None:
                continue
            new_gap = set(_all_edges(nxt)).symmetric_difference(target)
            if len(new_gap) < len(gap):
                best = (cell, nxt)
                break
        if best is None:
            return _decompose_bfs(space, c, cp, pool)
        steps.append(best[1])
        moves.append(frozenset((best[0],)))
    return DeformationTrace(tuple(steps), tuple(moves), MOVE_MINIMAL)


def _decompose_bfs(space: DiscreteSpace, c: CellChain, cp: CellChain,
                   pool) -> DeformationTrace:
    target = set(_all_edges(cp))
    start_key = _all_edges(c)
    frontier = [(c, (), ())]
    seen = {frozenset(start_key)}
    for _ in range(len(pool) + 2):
        nxt_frontier = []
        for cur, steps, moves in frontier:
            for cell in pool:
                nxt = single_cell_move(space, cur, cell)
                if nxt is None:
                    continue
                key = frozenset(_all_edges(nxt))
                if key in seen:
                    continue
                seen.add(key)
                ns = steps + (nxt,)
                nm = moves + (frozenset((cell,)),)
                if set(_all_edges(nxt)) == target:
                    return DeformationTrace((c,) + ns, nm, MOVE_MINIMAL)
                nxt_frontier.append((nxt, ns, nm))
        frontier = nxt_frontier
        if not frontier:
            break
    raise PreconditionError("no single-cell decomposition found")


def realizing_cells(space: DiscreteSpace, c1: CellChain, c2: CellChain):
    """A set of 2-cells spanned by the two curves whose boundary XorSum
    equals the curves' edge difference; None when no such set exists.

    Solved as a linear system over GF(2) with one row per candidate cell.
    """
    union = c1.vertex_set() | c2.vertex_set()
    pool = [cid for cid in space.cells_of_dim(2) if set(cid[1]) <= union]
    target = frozenset(set(_all_edges(c1)).symmetric_difference(
        _all_edges(c2)))
    if not target:
        return frozenset()
    pivots: dict = {}
    for cid in pool:
        vec = frozenset(b[1] for b in space.cells[cid].boundary)
        cells = frozenset((cid,))
        while vec:
            e = min(vec)
            if e in pivots:
                pv, pc = pivots[e]
                vec = vec.symmetric_difference(pv)
                cells = cells.symmetric_difference(pc)
            else:
                pivots[e] = (vec, cells)
                break
    chosen: frozenset = frozenset()
    t = target
    while t:
        e = min(t)
        if e not in pivots:
            return None
        pv, pc = pivots[e]
        t = t.symmetric_difference(pv)
        chosen = chosen.symmetric_difference(pc)
    return chosen


# -- cross-over detection ---------------------------------------------------


def _oriented_link_cycle(space: DiscreteSpace, v: int) -> tuple:
    """The link of v as a directed vertex cycle, oriented by the 2-cells."""
    arcs = []
    for cid in space.cells_containing(v, 2):
        loop = space.cells[cid].loop
        i = loop.index(v)
        arc = loop[i + 1:] + loop[:i]
        arcs.append(arc)
    starts = {}
    for arc in arcs:
        starts[arc[0]] = arc
    cycle = []
    arc = arcs[0]
    for _ in range(len(arcs)):
        cycle.extend(arc[:-1])
        nxt = starts.get(arc[-1])
        if nxt is None:
            raise PreconditionError("link of vertex %d is not a cycle" % v)
        arc = nxt
    if arc is not arcs[0] or len(cycle) != len(set(cycle)):
        raise PreconditionError("link of vertex %d is not a single cycle" % v)
    return tuple(cycle)


def _on_directed_arc(cycle: tuple, start: int, stop: int, probe: int) -> bool:
    """Is ``probe`` strictly inside the directed walk start -> stop?"""
    n = len(cycle)
    i = cycle.index(start)
    j = 1
    while True:
        cur = cycle[(i + j) % n]
        if cur == stop:
            return False
        if cur == probe:
            return True
        j += 1
        if j > n:
            raise InputError("probe vertex not on the link cycle")


def _neighbors_on(chain: CellChain, idx: int):
    verts = chain.verts
    n = len(verts)
    prev = verts[idx - 1] if (idx > 0 or chain.closed) else None
    nxt = verts[(idx + 1) % n] if (idx < n - 1 or chain.closed) else None
    return prev, nxt


def crosses_over(space: DiscreteSpace, c: CellChain, cp: CellChain) -> bool:
    """Transversal intersection: the second curve enters and leaves a shared
    stretch on opposite sides of the first.

    Each maximal shared stretch is compared through orientation tags in the
    links of its first and last vertex; opposite tags mean the second curve
    pierced the first.  The second curve's travel direction over a stretch
    is normalized per stretch, so reversed parametrizations agree.
    """
    if space.top_dim != 2:
        raise PreconditionError("cross-over detection needs a 2-complex")
    if not space.oriented:
        raise PreconditionError("cross-over detection needs an oriented "
                                "complex")
    _require_curve(c)
    _require_curve(cp)
    if len(c.verts) < 2 or len(cp.verts) < 2:
        return False
    posc = {v: i for i, v in enumerate(c.verts)}
    poscp = {v: i for i, v in enumerate(cp.verts)}
    for piece, forward in _shared_pieces(c, cp, poscp):
        p, q = piece[0], piece[-1]
        a, bnext = _neighbors_on(c, posc[p])
        sprev, t = _neighbors_on(c, posc[q])
        if len(piece) >= 2:
            bnext = piece[1]
            sprev = piece[-2]
        if forward:
            ap, _ = _neighbors_on(cp, poscp[p])
            _, tp = _neighbors_on(cp, poscp[q])
        else:
            _, ap = _neighbors_on(cp, poscp[p])
            tp, _ = _neighbors_on(cp, poscp[q])
        if None in (a, t, ap, tp, bnext, sprev):
            continue
        if ap == a or tp == t:
            continue
        side_in = _on_directed_arc(_oriented_link_cycle(space, p),
                                   a, bnext, ap)
        side_out = _on_directed_arc(_oriented_link_cycle(space, q),
                                    sprev, t, tp)
        if side_in != side_out:
            return True
    return False


def _shared_pieces(c: CellChain, cp: CellChain, poscp: dict) -> list:
    """Shared vertex stretches of c, split so each is contiguous on cp as
    well; yields (piece, cp-travels-forward) pairs."""
    shared = set(c.verts) & set(cp.verts)
    m = len(cp.verts)

    def step(last, cur):
        d = poscp[cur] - poscp[last]
        if cp.closed:
            d %= m
            if d == 1:
                return 1
            if d == m - 1:
                return -1
            return 0
        return d if d in (1, -1) else 0

    pieces = []
    cur: list = []
    direction = 0
    for v in c.verts:
        if v not in shared:
            if cur:
                pieces.append((cur, direction >= 0))
            cur, direction = [], 0
            continue
        if cur:
            d = step(cur[-1], v)
            if d != 0 and (direction == 0 or d == direction):
                cur.append(v)
                direction = d
                continue
            pieces.append((cur, direction >= 0))
        cur, direction = [v], 0
    if cur:
        pieces.append((cur, direction >= 0))
    return pieces


def are_side_gradually_varied(space: DiscreteSpace, c: CellChain,
                              cp: CellChain) -> bool:
    """Gradually varied with no cross-over.

    Transversal intersection of curves is a surface notion; in spaces of
    dimension three or more two curves never cross over, so only the
    gradual-variation clauses apply there.
    """
    if not are_gradually_varied(space, c, cp):
        return False
    if space.top_dim != 2:
        return True
    if len(c.verts) < 2 or len(cp.verts) < 2:
        return True
    return not crosses_over(space, c, cp)


# -- detours around a forbidden cell ---------------------------------------


def detour_sequence(space: DiscreteSpace, c0: CellChain, c1: CellChain,
                    forbidden) -> DeformationTrace:
    """A minimal single-cell move sequence from c0 to c1 avoiding one cell.

    The two arcs must share endpoints and jointly bound the forbidden
    2-cell, which in turn must sit on the boundary sphere of an enclosing
    cell: either an explicit 3-cell of the space, or the space itself when
    it is a closed 2-manifold.
    """
    _require_curve(c0)
    _require_curve(c1)
    if forbidden not in space.cells or forbidden[0] != 2:
        raise InputError("forbidden must name a 2-cell")
    if set(_all_edges(c0)) == set(_all_edges(c1)):
        return DeformationTrace((c0,), (), MOVE_MINIMAL)
    if c0.closed or c1.closed:
        raise PreconditionError("detour arcs must be open paths")
    if {c0.verts[0], c0.verts[-1]} != {c1.verts[0], c1.verts[-1]}:
        raise PreconditionError("arcs must share their endpoints")
    rim = {b[1] for b in space.cells[forbidden].boundary}
    if set(_all_edges(c0)) | set(_all_edges(c1)) != rim:
        raise PreconditionError("the arcs do not jointly bound the "
                                "forbidden cell")
    enclosing = [cid for cid in space.cells_of_dim(3)
                 if forbidden in space.cells[cid].boundary]
    if enclosing:
        pool = [f for f in space.cells[enclosing[0]].boundary
                if f != forbidden]
    elif space.top_dim == 2:
        pool = [cid for cid in space.cells_of_dim(2) if cid != forbidden]
    else:
        raise PreconditionError("no enclosing cell provides a boundary "
                                "sphere to route over")

    start_key = frozenset(_all_edges(c0))
    target = set(_all_edges(c1))
    frontier = [(c0, (), ())]
    seen = {start_key}
    for _ in range(len(pool) + 1):
        nxt_frontier = []
        for cur, steps, moves in frontier:
            for cell in pool:
                nxt = single_cell_move(space, cur, cell)
                if nxt is None:
                    continue
                key = frozenset(_all_edges(nxt))
                if key in seen:
                    continue
                seen.add(key)
                ns, nm = steps + (nxt,), moves + (frozenset((cell,)),)
                if set(_all_edges(nxt)) == target:
                    trace = DeformationTrace((c0,) + ns, nm, MOVE_MINIMAL)
                    assert all(forbidden not in m for m in trace.moves)
                    return trace
                nxt_frontier.append((nxt, ns, nm))
        frontier = nxt_frontier
        if not frontier:
            break
    raise PreconditionError("no detour found over the enclosing boundary")


# -- contraction ------------------------------------------------------------


def point_chain(space: DiscreteSpace, v: int) -> CellChain:
    return CellChain(1, (), ordered=True, closed=False, verts=(v,))


def verify_contraction(space: DiscreteSpace, cycle: CellChain, p: int,
                       trace: DeformationTrace) -> CheckReport:
    """Check the contraction clauses: anchored at p, monotone vertex loss,
    side-gradual steps, ending at the single point p."""
    report = CheckReport(True)
    if trace.kind != MOVE_SIDE_GRADUAL:
        report.add("trace kind is %r, not side-gradual" % trace.kind)
        return report
    if not trace.steps:
        report.add("empty trace")
        return report
    if set(_all_edges(trace.steps[0])) != set(_all_edges(cycle)):
        report.add("trace does not start at the given cycle")
    last = trace.steps[-1]
    if last.verts != (p,):
        report.add("trace does not end at the single point %d" % p)
    dropped: set = set()
    prev = None
    for t, step in enumerate(trace.steps):
        vs = step.vertex_set()
        if p not in vs:
            report.add("step %d loses the anchor point %d" % (t, p))
        regained = vs & dropped
        if regained:
            report.add("step %d re-acquires dropped vertices %s"
                       % (t, sorted(regained)))
        if prev is not None:
            dropped |= prev.vertex_set() - vs
            if not are_side_gradually_varied(space, prev, step):
                report.add("steps %d -> %d are not side-gradually varied"
                           % (t - 1, t))
        prev = step
    return report


def _curve_key(chain: CellChain):
    vs = chain.verts
    if not chain.closed:
        return min(vs, tuple(reversed(vs)))
    best = None
    for seq in (vs, tuple(reversed(vs))):
        for r in range(len(seq)):
            rot = seq[r:] + seq[:r]
            if best is None or rot < best:
                best = rot
    return best


def search_contraction(space: DiscreteSpace, cycle: CellChain, p: int,
                       step_budget: int):
    """Bounded iterative-deepening search for a contraction of the cycle
    to p.  Returns a verified trace, or None (inconclusive) when the
    budget runs out."""
    _require_curve(cycle)
    if not cycle.closed:
        raise InputError("contraction applies to closed curves")
    if p not in cycle.verts:
        raise InputError("anchor %d is not on the cycle" % p)

    def goal_cell(chain):
        for cid in space.cells_of_dim(2):
            if p in cid[1] and \
                    {b[1] for b in space.cells[cid].boundary} == \
                    set(_all_edges(chain)):
                return cid
        return None

    for depth in range(1, step_budget + 1):
        found = _contract_dfs(space, cycle, p, depth, goal_cell,
                              frozenset(), set())
        if found is not None:
            steps, moves = found
            trace = DeformationTrace((cycle,) + steps, moves,
                                     MOVE_SIDE_GRADUAL)
            report = verify_contraction(space, cycle, p, trace)
            if not report:
                raise PreconditionError("search produced an invalid trace: "
                                        "%s" % "; ".join(report.problems))
            return trace
    return None


def _contract_dfs(space: DiscreteSpace, cur: CellChain, p: int, depth: int,
                  goal_cell, banned: frozenset, visited: set):
    cell = goal_cell(cur)
    if cell is not None:
        return (point_chain(space, p),), (frozenset((cell,)),)
    if depth <= 1:
        return None
    key = (_curve_key(cur), banned, depth)
    if key in visited:
        return None
    visited.add(key)
    cur_vs = cur.vertex_set()
    for cid in space.cells_of_dim(2):
        nxt = single_cell_move(space, cur, cid)
        if nxt is None or not nxt.closed:
            continue
        vs = nxt.vertex_set()
        if p not in vs or vs & banned:
            continue
        nbanned = banned | frozenset(cur_vs - vs)
        sub = _contract_dfs(space, nxt, p, depth - 1, goal_cell,
                            nbanned, visited)
        if sub is not None:
            steps, moves = sub
            return (nxt,) + steps, (frozenset((cid,)),) + moves
    return None
