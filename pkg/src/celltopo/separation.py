"""Separation by a closed submanifold and contraction of a component.

A closed locally flat (k-1)-submanifold of a sphere-like closed k-manifold
splits the top cells into exactly two components whose common boundary it
is.  Each component then contracts to a single seed cell by repeatedly
dissolving the in-region cell farthest from the seed: its surface faces are
swapped for its remaining faces, so every step's XorSum is one full cell
boundary and the whole sequence replays backwards as an expansion.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .complexes import (CellChain, CheckReport, DiscreteSpace, check_regular,
                        edge_key, is_closed_manifold)
from .deformation import (MOVE_SIDE_GRADUAL, DeformationTrace, _all_edges,
                          are_side_gradually_varied, single_cell_move)
from .errors import (BudgetExhausted, InputError, PreconditionError,
                     UnsupportedConfiguration)
from .flatness import is_locally_flat, subset_flatness


@dataclass
class SeparationReport:
    """Flood-fill outcome: components of the complement plus evidence."""

    components: tuple
    boundary_ok: tuple
    flatness: CheckReport
    warnings: list = field(default_factory=list)
    crossing_parities: dict = field(default_factory=dict)

    @property
    def sizes(self) -> tuple:
        return tuple(len(c) for c in self.components)

    @property
    def exactly_two(self) -> bool:
        return len(self.components) == 2 and all(self.boundary_ok)


def _submanifold_cells(space: DiscreteSpace, s: CellChain) -> frozenset:
    if s.dim != space.top_dim - 1:
        raise InputError("separating chain must have dimension %d"
                         % (space.top_dim - 1))
    if s.dim == 1 and s.verts is not None:
        return frozenset((1, e) for e in s.edge_set())
    return frozenset(s.cells)


def _require_closed_chain(space: DiscreteSpace, cells: frozenset):
    count: dict = {}
    for cid in cells:
        for f in space.cells[cid].boundary:
            count[f] = count.get(f, 0) + 1
    if not cells or any(n != 2 for n in count.values()):
        raise InputError("separating chain is not closed: some face does "
                         "not lie in exactly two of its cells")


def components_of_complement(space: DiscreteSpace,
                             s: CellChain) -> SeparationReport:
    """Flood fill the top cells, never stepping across a face of ``s``."""
    reg = check_regular(space)
    if not reg:
        raise PreconditionError("space is not a regular manifold: %s"
                                % "; ".join(reg.problems[:3]))
    if not is_closed_manifold(space):
        raise PreconditionError("space is not closed")
    if not space.oriented:
        raise PreconditionError("separation requires an oriented space")
    barrier = _submanifold_cells(space, s)
    _require_closed_chain(space, barrier)

    warnings = []
    flat = is_locally_flat(space, s)
    if not flat:
        warnings.append("separating chain is not locally flat; component "
                        "count is not guaranteed")

    k = space.top_dim
    top = space.cells_of_dim(k)
    label: dict = {}
    components = []
    for cid in top:
        if cid in label:
            continue
        comp = {cid}
        label[cid] = len(components)
        queue = deque([cid])
        while queue:
            cur = queue.popleft()
            for f in space.cells[cur].boundary:
                if f in barrier:
                    continue
                for nxt in space.cofaces(f):
                    if nxt != cur and nxt not in label:
                        label[nxt] = len(components)
                        comp.add(nxt)
                        queue.append(nxt)
        components.append(frozenset(comp))
    components.sort(key=min)

    boundary_ok = []
    for comp in components:
        ok = all(any(c in comp for c in space.cofaces(f)) for f in barrier)
        boundary_ok.append(ok)

    parities = _crossing_parities(space, barrier, components)
    return SeparationReport(tuple(components), tuple(boundary_ok), flat,
                            warnings, parities)


def _crossing_parities(space: DiscreteSpace, barrier: frozenset,
                       components, limit: int = 14) -> dict:
    """Parity of barrier crossings along one canonical cell path per
    off-chain vertex pair."""
    k = space.top_dim
    s_verts = {v for cid in barrier for v in cid[1]}
    off = [v for v in range(space.n_vertices) if v not in s_verts][:limit]
    comp_of = {}
    for i, comp in enumerate(components):
        for cid in comp:
            comp_of[cid] = i

    def home_cell(v):
        return space.cells_containing(v, k)[0]

    out = {}
    for a, b in itertools.combinations(off, 2):
        start, goal = home_cell(a), home_cell(b)
        prev = {start: (None, 0)}
        queue = deque([start])
        while queue and goal not in prev:
            cur = queue.popleft()
            for f in space.cells[cur].boundary:
                for nxt in space.cofaces(f):
                    if nxt != cur and nxt not in prev:
                        cross = 1 if f in barrier else 0
                        prev[nxt] = (cur, prev[cur][1] + cross)
                        queue.append(nxt)
        if goal in prev:
            out[(a, b)] = prev[goal][1] % 2
    return out


def first_crossing(space: DiscreteSpace, s: CellChain,
                   trace: DeformationTrace):
    """Smallest step index whose path meets the chain, with the entering
    vertex in path order; None when no step does."""
    if trace.kind != MOVE_SIDE_GRADUAL:
        raise InputError("first_crossing expects a side-gradual trace")
    s_verts = s.vertex_set()
    for i, step in enumerate(trace.steps):
        for v in step.verts:
            if v in s_verts:
                return (i, v)
    return None


# -- path flattening ---------------------------------------------------------


def _chain_closure_edges(space: DiscreteSpace, s: CellChain) -> frozenset:
    edges = set()
    stack = list(_submanifold_cells(space, s))
    seen = set(stack)
    while stack:
        cid = stack.pop()
        if cid[0] == 1:
            edges.add(cid[1])
        for b in space.cells[cid].boundary:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return frozenset(edges)


def _intersection_with(space: DiscreteSpace, path: CellChain, s_verts,
                       s_edges):
    verts = frozenset(v for v in path.verts if v in s_verts)
    edges = frozenset(e for e in _all_edges(path) if e in s_edges)
    return verts, edges


def flatten_path(space: DiscreteSpace, s: CellChain, p_i: CellChain,
                 p_iminus1: CellChain, budget: int | None = None):
    """Pivot a path until its intersection with ``s`` is locally flat in s,
    then bridge from the previous path without touching s.

    Pivots are XorSum moves with 2-cells of s; each must keep the original
    entry vertex and reduce the violation count.  The returned bridge is a
    side-gradual trace from ``p_iminus1`` to the new path whose
    intermediate steps stay clear of s.
    """
    if space.top_dim < 3:
        raise PreconditionError("path flattening applies from dimension 3 "
                                "upward")
    flat_s = is_locally_flat(space, s)
    if not flat_s:
        raise PreconditionError("the separating chain itself is not "
                                "locally flat")
    s_verts = s.vertex_set()
    s_edges = _chain_closure_edges(space, s)
    s_faces = sorted(c for c in _face_closure(space, s) if c[0] == 2)
    sub = _restrict_to(space, s)
    smap = sub["map"]
    s_space = sub["space"]

    iv, ie = _intersection_with(space, p_i, s_verts, s_edges)
    if not iv:
        raise InputError("the path does not meet the chain")
    entry = next(v for v in p_i.verts if v in s_verts)
    if any(v in s_verts for v in p_iminus1.verts):
        raise InputError("the previous path already meets the chain")

    def x_report(path):
        v, e = _intersection_with(space, path, s_verts, s_edges)
        return subset_flatness(s_space, [smap[x] for x in v],
                               [edge_key(smap[a], smap[b]) for a, b in e])

    cur = p_i
    report = x_report(cur)
    if report:
        return p_i, DeformationTrace((), (), MOVE_SIDE_GRADUAL)
    if budget is None:
        budget = len(space.cells_of_dim(2))
    while not report:
        if budget <= 0:
            raise BudgetExhausted("pivot budget exhausted before the "
                                  "intersection became flat",
                                  state=cur)
        budget -= 1
        best = None
        for cell in s_faces:
            nxt = single_cell_move(space, cur, cell)
            if nxt is None or entry not in nxt.verts:
                continue
            rep = x_report(nxt)
            nv, _ = _intersection_with(space, nxt, s_verts, s_edges)
            score = (len(rep.problems), len(nv), cell)
            if best is None or score < best[0]:
                best = (score, nxt, rep)
        if best is None or best[0][0] >= len(report.problems):
            raise UnsupportedConfiguration(
                "no pivot cell of the chain reduces the violation count",
                cell=None if best is None else best[0][2])
        _, cur, report = best

    bridge = _bridge_off_chain(space, s_verts, p_iminus1, cur)
    return cur, bridge


def _face_closure(space: DiscreteSpace, s: CellChain) -> frozenset:
    out = set()
    stack = list(_submanifold_cells(space, s))
    while stack:
        cid = stack.pop()
        if cid in out:
            continue
        out.add(cid)
        stack.extend(space.cells[cid].boundary)
    return frozenset(out)


def _restrict_to(space: DiscreteSpace, s: CellChain) -> dict:
    """The chain's own cells as a standalone space with dense vertex ids."""
    closure = _face_closure(space, s)
    verts = sorted({v for cid in closure for v in cid[1]})
    smap = {v: i for i, v in enumerate(verts)}
    edges = [(smap[a], smap[b]) for d, (a, b) in
             (c for c in closure if c[0] == 1)]
    cells: dict = {}
    for cid in closure:
        if cid[0] >= 2:
            cells.setdefault(cid[0], []).append(
                tuple(sorted(smap[v] for v in cid[1])))
    restricted = DiscreteSpace(len(verts), edges, cells, oriented=True)
    return {"space": restricted, "map": smap}


def _bridge_off_chain(space: DiscreteSpace, s_verts, start: CellChain,
                      goal: CellChain, max_states: int = 20000):
    """Single-cell moves from ``start`` through chain-free paths until one
    step of side-gradual variation reaches ``goal``."""
    from .deformation import realizing_cells

    def clean(chain):
        return not (set(chain.verts) & s_verts)

    if not clean(start):
        raise InputError("bridge start touches the chain")

    def finish(steps, moves):
        last = steps[-1]
        cells = realizing_cells(space, last, goal)
        if cells is None:
            return None
        return DeformationTrace(steps + (goal,), moves + (cells,),
                                MOVE_SIDE_GRADUAL)

    if are_side_gradually_varied(space, start, goal):
        trace = finish((start,), ())
        if trace is not None:
            return trace
    seen = {frozenset(_all_edges(start))}
    frontier = [(start, (start,), ())]
    states = 0
    while frontier:
        nxt_frontier = []
        for cur, steps, moves in frontier:
            for cell in space.cells_of_dim(2):
                nxt = single_cell_move(space, cur, cell)
                if nxt is None or not clean(nxt):
                    continue
                key = frozenset(_all_edges(nxt))
                if key in seen:
                    continue
                seen.add(key)
                states += 1
                if states > max_states:
                    raise BudgetExhausted("bridge search exceeded its "
                                          "state budget", state=cur)
                ns = steps + (nxt,)
                nm = moves + (frozenset((cell,)),)
                if are_side_gradually_varied(space, nxt, goal):
                    trace = finish(ns, nm)
                    if trace is not None:
                        return trace
                nxt_frontier.append((nxt, ns, nm))
        frontier = nxt_frontier
    raise BudgetExhausted("no chain-free bridge reaches the flattened path",
                          state=start)


# -- contraction of a component ----------------------------------------------


@dataclass(frozen=True)
class Removal:
    """One contraction step: the dissolved cell, the surface faces it
    replaced, and the faces that replaced them."""

    cell: tuple
    replaced: frozenset
    replacement: frozenset


@dataclass(frozen=True)
class ContractionTrace:
    """Removal sequence from a component's boundary down to one cell.

    ``surfaces`` materializes every intermediate closed pseudo-manifold;
    inverting the trace swaps each removal's face sets and replays the
    surfaces backwards, which is the expansion witnessing that the
    component is a single cell up to the recorded moves.
    """

    seed: tuple
    removals: tuple
    surfaces: tuple
    direction: str = "contract"


def _faces(space: DiscreteSpace, cid) -> frozenset:
    return frozenset(space.cells[cid].boundary)


def _patch_connected(space: DiscreteSpace, patch) -> bool:
    patch = sorted(patch)
    if not patch:
        return False
    if len(patch) == 1:
        return True
    adj = {c: set() for c in patch}
    by_face: dict = {}
    for c in patch:
        for f in space.cells[c].boundary:
            by_face.setdefault(f, []).append(c)
    for f, cs in by_face.items():
        for a, b in itertools.combinations(cs, 2):
            adj[a].add(b)
            adj[b].add(a)
    seen = {patch[0]}
    stack = [patch[0]]
    while stack:
        for n in adj[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(patch)


def _is_pseudo_manifold(space: DiscreteSpace, cells) -> bool:
    count: dict = {}
    for cid in cells:
        for f in space.cells[cid].boundary:
            count[f] = count.get(f, 0) + 1
    return bool(cells) and all(n == 2 for n in count.values())


def contract_to_cell(space: DiscreteSpace, component, s: CellChain,
                     seed) -> ContractionTrace:
    """Dissolve the component cell by cell, farthest from the seed first.

    Each selected cell must meet the current surface in one connected patch
    of faces; the patch is swapped for the cell's other faces.  A cell
    whose surface intersection is not such a patch is the configuration
    this construction does not cover, reported as an explicit error.
    """
    component = frozenset(component)
    k = space.top_dim
    if seed not in component:
        raise InputError("seed %r is not in the component" % (seed,))
    barrier = _submanifold_cells(space, s)
    if not _faces(space, seed) & barrier:
        raise InputError("seed has no face on the separating chain")

    surface = frozenset(barrier)
    remaining = set(component)
    removals = []
    surfaces = [surface]
    while len(remaining) > 1:
        dist = _region_distances(space, seed, remaining)
        touching = [c for c in sorted(remaining)
                    if c != seed and _faces(space, c) & surface]
        if not touching:
            raise UnsupportedConfiguration(
                "no remaining cell touches the surface")
        order = sorted(touching,
                       key=lambda c: (-dist.get(c, len(component) + 1), c))
        chosen = None
        for cand in order:
            if _patch_connected(space, _faces(space, cand) & surface):
                chosen = cand
                break
        if chosen is None:
            raise UnsupportedConfiguration(
                "surface intersection of the farthest cell is not a single "
                "connected patch of faces", cell=order[0])
        patch = _faces(space, chosen) & surface
        replacement = _faces(space, chosen) - surface
        new_surface = (surface - patch) | replacement
        if surface.symmetric_difference(new_surface) != _faces(space, chosen):
            raise UnsupportedConfiguration(
                "step does not realize the cell boundary as a XorSum",
                cell=chosen)
        if not _is_pseudo_manifold(space, new_surface):
            raise UnsupportedConfiguration(
                "intermediate surface is not a closed pseudo-manifold",
                cell=chosen)
        removals.append(Removal(chosen, patch, replacement))
        surfaces.append(new_surface)
        surface = new_surface
        remaining.remove(chosen)
    if surface != _faces(space, seed):
        raise UnsupportedConfiguration(
            "contraction ended on a surface other than the seed boundary",
            cell=seed)
    return ContractionTrace(seed, tuple(removals), tuple(surfaces))


def _region_distances(space: DiscreteSpace, seed, region: set) -> dict:
    dist = {seed: 1}
    queue = deque([seed])
    while queue:
        cur = queue.popleft()
        for f in space.cells[cur].boundary:
            for nxt in space.cofaces(f):
                if nxt in region and nxt not in dist:
                    dist[nxt] = dist[cur] + 1
                    queue.append(nxt)
    return dist


def invert_trace(trace: ContractionTrace) -> ContractionTrace:
    """The expansion (or re-contraction) obtained by replaying backwards."""
    flipped = tuple(Removal(r.cell, r.replacement, r.replaced)
                    for r in reversed(trace.removals))
    direction = "expand" if trace.direction == "contract" else "contract"
    return ContractionTrace(trace.seed, flipped,
                            tuple(reversed(trace.surfaces)), direction)


def replay(trace: ContractionTrace) -> frozenset:
    """Apply every removal to the first surface; returns the final surface
    and checks each step against the materialized sequence."""
    surface = trace.surfaces[0]
    for i, r in enumerate(trace.removals):
        if not r.replaced <= surface or (surface & r.replacement):
            raise InputError("step %d does not apply to its surface" % i)
        surface = (surface - r.replaced) | r.replacement
        if surface != trace.surfaces[i + 1]:
            raise InputError("step %d disagrees with the stored surface" % i)
    return surface


def verify_contraction_trace(space: DiscreteSpace, component, s: CellChain,
                             trace: ContractionTrace) -> CheckReport:
    """Independent re-check of every contraction invariant."""
    report = CheckReport(True)
    barrier = _submanifold_cells(space, s)
    if trace.surfaces[0] != barrier:
        report.add("trace does not start at the chain")
    if len(trace.removals) != len(component) - 1:
        report.add("expected %d removals, found %d"
                   % (len(component) - 1, len(trace.removals)))
    if trace.seed in {r.cell for r in trace.removals}:
        report.add("the seed was removed")
    for i, r in enumerate(trace.removals):
        before, after = trace.surfaces[i], trace.surfaces[i + 1]
        if before.symmetric_difference(after) != _faces(space, r.cell):
            report.add("step %d XorSum is not the removed cell boundary" % i)
        if not _is_pseudo_manifold(space, after):
            report.add("surface after step %d is not a closed "
                       "pseudo-manifold" % i)
    if trace.surfaces[-1] != _faces(space, trace.seed):
        report.add("final surface is not the seed boundary")
    return report
