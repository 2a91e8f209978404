"""Acceptance criteria, one test per criterion.

Every check here is exact (integer or boolean equality); there are no
tolerances to calibrate.  Each test prints a single PASS/FAIL line so the
suite reads as a checklist under ``pytest -v -s``.
"""

import itertools
import random
from contextlib import contextmanager

from celltopo import generators as gen
from celltopo.complexes import CellChain, edge_key, is_minimal_cycle
from celltopo.deformation import (are_gradually_varied,
                                  decompose_minimal_moves, detour_sequence,
                                  intersection_is_attaching_arc,
                                  single_cell_move, xor_sum)
from celltopo.errors import PreconditionError
from celltopo.flatness import build_collar, is_locally_flat
from celltopo.metrics import graph_distance, k_cell_distance
from celltopo.separation import (components_of_complement, contract_to_cell,
                                 flatten_path, invert_trace, replay)


@contextmanager
def criterion(label):
    try:
        yield
    except BaseException:
        print("criterion %s: FAIL" % label)
        raise
    print("criterion %s: PASS" % label)


def barrier_of(space, chain):
    if chain.dim == 1:
        return frozenset((1, e) for e in chain.edge_set())
    return frozenset(chain.cells)


def all_simple_cell_paths(space, start, goal):
    """Every simple top-cell sequence from start to goal, with the shared
    faces crossed along the way."""
    k = space.top_dim
    out = []

    def walk(seq, faces):
        cur = seq[-1]
        if cur == goal:
            out.append(tuple(faces))
            return
        cur_faces = set(space.cells[cur].boundary)
        for nxt in space.cells_of_dim(k):
            if nxt in seq:
                continue
            for f in sorted(cur_faces & set(space.cells[nxt].boundary)):
                walk(seq + [nxt], faces + [f])

    walk([start], [])
    return out


def test_criterion_1_separation():
    with criterion("1 (separation counts + parity oracle)"):
        octa = gen.octahedron()
        eq = gen.equator(octa, "octahedron")
        rep = components_of_complement(octa, eq)
        assert rep.sizes == (4, 4) and len(rep.components) == 2

        s4 = gen.simplex_boundary(4)
        sphere = gen.equator(s4, "simplex-boundary")
        rep4 = components_of_complement(s4, sphere)
        assert sorted(rep4.sizes) == [1, 4] and len(rep4.components) == 2

        for space, chain, report in ((octa, eq, rep), (s4, sphere, rep4)):
            barrier = barrier_of(space, chain)
            comp_of = {c: i for i, comp in enumerate(report.components)
                       for c in comp}
            s_verts = chain.vertex_set()
            # independent oracle: enumerate every simple cell path between
            # every pair of top cells and check crossing parity exactly
            top = space.cells_of_dim(space.top_dim)
            for a, b in itertools.combinations(top, 2):
                want = comp_of[a] != comp_of[b]
                paths = all_simple_cell_paths(space, a, b)
                assert paths
                for faces in paths:
                    parity = sum(1 for f in faces if f in barrier) % 2
                    assert bool(parity) is want
            # and 100% of the component-assigned vertex pairs
            off = [v for v in range(space.n_vertices) if v not in s_verts]
            for va, vb in itertools.combinations(off, 2):
                ca = space.cells_containing(va, space.top_dim)[0]
                cb = space.cells_containing(vb, space.top_dim)[0]
                want = comp_of[ca] != comp_of[cb]
                for faces in all_simple_cell_paths(space, ca, cb):
                    parity = sum(1 for f in faces if f in barrier) % 2
                    assert bool(parity) is want


def test_criterion_2_common_boundary():
    with criterion("2 (common boundary)"):
        for space, family in ((gen.octahedron(), "octahedron"),
                              (gen.simplex_boundary(4), "simplex-boundary")):
            chain = gen.equator(space, family)
            report = components_of_complement(space, chain)
            assert len(report.components) == 2
            for f in barrier_of(space, chain):
                holders = space.cofaces(f)
                assert len(holders) == 2
                sides = sorted(
                    next(i for i, comp in enumerate(report.components)
                         if c in comp) for c in holders)
                assert sides == [0, 1]
            assert all(report.boundary_ok)


def test_criterion_3_contraction():
    with criterion("3 (contraction of the four-cell component)"):
        s4 = gen.simplex_boundary(4)
        sphere = gen.equator(s4, "simplex-boundary")
        report = components_of_complement(s4, sphere)
        comp = next(c for c in report.components if len(c) == 4)
        seed = sorted(comp)[0]
        trace = contract_to_cell(s4, comp, sphere, seed)
        assert len(trace.removals) == len(comp) - 1 == 3
        for i, r in enumerate(trace.removals):
            before, after = trace.surfaces[i], trace.surfaces[i + 1]
            assert before.symmetric_difference(after) == \
                frozenset(s4.cells[r.cell].boundary)
            count = {}
            for cid in after:
                for f in s4.cells[cid].boundary:
                    count[f] = count.get(f, 0) + 1
            assert all(v == 2 for v in count.values())
        expansion = invert_trace(trace)
        recovered = replay(expansion)

        def canon(cells):
            return ("\n".join(repr(c) for c in sorted(cells))).encode()

        assert canon(recovered) == canon(frozenset(sphere.cells))
        assert invert_trace(expansion) == trace


def test_criterion_4_distance_equality():
    with criterion("4 (graph distance equals cell distance)"):
        for n in (3, 4):
            space = gen.simplex_boundary(n)
            for x, y in itertools.combinations(range(space.n_vertices), 2):
                d1 = graph_distance(space, x, y)
                for i in range(2, space.top_dim + 1):
                    assert k_cell_distance(space, x, y, i) == d1


def test_criterion_5_flatness_collar_equivalence():
    with criterion("5 (flatness decides collars on the figure set)"):
        verdicts = {"fig2a": True, "fig3a": False, "fig3b": False,
                    "fig3c": False, "fig5": True, "fig6a": False,
                    "fig6b": False}
        cases = [(gen.figure_case(fid), want)
                 for fid, want in sorted(verdicts.items())]
        octa = gen.octahedron()
        cases.append(((octa, gen.equator(octa, "octahedron")), True))
        for (space, curve), want in cases:
            flat = bool(is_locally_flat(space, curve))
            assert flat is want
            built = True
            try:
                build_collar(space, curve)
            except PreconditionError:
                built = False
            assert built is flat


def random_simple_path(space, rng, max_len=6):
    v = rng.randrange(space.n_vertices)
    walk = [v]
    for _ in range(rng.randint(1, max_len)):
        options = [w for w in space.vertex_neighbors(walk[-1])
                   if w not in walk]
        if not options:
            break
        walk.append(rng.choice(options))
    if len(walk) == 1:
        walk.append(space.vertex_neighbors(walk[0])[0])
    return CellChain.path(space, walk)


def suite_varied_pairs():
    """The gradually varied same-endpoint pairs exercised by the suite."""
    pairs = []
    grid = gen.strip_grid(4, 3)

    def vid(i, j):
        return i * 4 + j

    c = CellChain.path(grid, [vid(i, 1) for i in range(5)])
    bump = CellChain.path(grid, [vid(0, 1), vid(0, 2), vid(1, 2), vid(1, 1),
                                 vid(2, 1), vid(3, 1), vid(4, 1)])
    b2 = CellChain.path(grid, [vid(0, 1), vid(0, 2), vid(1, 2), vid(2, 2),
                               vid(2, 1), vid(3, 1), vid(4, 1)])
    pairs += [(grid, c, bump), (grid, c, b2)]

    tg = gen.strip_grid(6, 2, triangulated=True)

    def tv(i, j):
        return i * 3 + j

    straight = CellChain.path(tg, [tv(i, 0) for i in range(7)])
    bumps = CellChain.path(tg, [tv(0, 0), tv(1, 1), tv(1, 0), tv(2, 0),
                                tv(3, 1), tv(3, 0), tv(4, 0), tv(5, 1),
                                tv(5, 0), tv(6, 0)])
    pairs.append((tg, straight, bumps))

    octa = gen.octahedron()
    eq = gen.equator(octa, "octahedron")
    pushed = single_cell_move(octa, eq, (2, (0, 1, 2)))
    pairs.append((octa, eq, pushed))
    return pairs


def test_criterion_6_deformation_algebra():
    with criterion("6 (XorSum laws, decomposition, attachment moves)"):
        torus = gen.torus_grid(4, 4)
        rng = random.Random(13)
        empty = CellChain(1, ())
        for _ in range(1000):
            a = random_simple_path(torus, rng)
            b = random_simple_path(torus, rng)
            ab = xor_sum(torus, a, b)
            assert set(ab.cells) == set(xor_sum(torus, b, a).cells)
            assert set(xor_sum(torus, ab, b).cells) == set(a.cells)
            assert set(xor_sum(torus, a, empty).cells) == set(a.cells)

        for space, c, cp in suite_varied_pairs():
            assert are_gradually_varied(space, c, cp)
            trace = decompose_minimal_moves(space, c, cp)
            assert all(len(m) == 1 for m in trace.moves)
            edges = set(e for _, e in trace.steps[0].cells)
            for m in trace.moves:
                cell = next(iter(m))
                faces = {b[1] for b in space.cells[cell].boundary}
                edges = edges.symmetric_difference(faces)
            assert edges == set(e for _, e in cp.cells)

        # every attachment move on the generated grids is a gradual step
        for space in (gen.strip_grid(3, 2), gen.strip_grid(2, 2, True)):
            paths = []

            def extend(walk):
                if 2 <= len(walk) <= 4:
                    paths.append(CellChain.path(space, walk))
                if len(walk) >= 4:
                    return
                for w in space.vertex_neighbors(walk[-1]):
                    if w not in walk:
                        extend(walk + [w])

            for v in range(space.n_vertices):
                extend([v])
            moved = 0
            for chain in paths:
                for cell in space.cells_of_dim(2):
                    if not intersection_is_attaching_arc(space, chain, cell):
                        continue
                    out = single_cell_move(space, chain, cell)
                    assert out is not None
                    moved += 1
                    assert are_gradually_varied(space, chain, out)
            assert moved > 100


def test_criterion_7_detours():
    with criterion("7 (detours around a forbidden cell)"):
        s3 = gen.simplex_boundary(3)
        c0 = CellChain.path(s3, [0, 1, 2])
        c1 = CellChain.path(s3, [0, 2])
        trace = detour_sequence(s3, c0, c1, (2, (0, 1, 2)))
        assert [s.verts for s in trace.steps] == \
            [(0, 1, 2), (0, 3, 1, 2), (0, 3, 2), (0, 2)]
        assert all((2, (0, 1, 2)) not in m for m in trace.moves)

        cube = gen.cube_boundary(3)
        bottom = (2, (0, 2, 4, 6))
        d0 = CellChain.path(cube, [0, 4, 6])
        d1 = CellChain.path(cube, [0, 2, 6])
        cube_trace = detour_sequence(cube, d0, d1, bottom)
        assert len(cube_trace.moves) == 5
        assert all(bottom not in m for m in cube_trace.moves)


def test_criterion_8_negative_control():
    with criterion("8 (torus meridian does not separate)"):
        torus = gen.torus_grid(4, 4)
        mer = gen.torus_meridian(torus, 4)
        report = components_of_complement(torus, mer)
        assert report.sizes == (16,)
        assert is_minimal_cycle(torus, mer)
        mer_edges = frozenset((1, e) for e in mer.edge_set())
        assert all(frozenset(torus.cells[c].boundary) != mer_edges
                   for c in torus.cells_of_dim(2))


def test_criterion_9_path_flattening():
    with criterion("9 (path flattening with a clean bridge)"):
        cube4 = gen.cube_boundary(4)
        faces = [(2, (0, 2, 4, 6)), (2, (8, 10, 12, 14)), (2, (0, 2, 8, 10)),
                 (2, (4, 6, 12, 14)), (2, (0, 4, 8, 12)),
                 (2, (2, 6, 10, 14))]
        s = CellChain.of_cells(cube4, 2, faces, closed=True)
        assert is_locally_flat(cube4, s)
        p_i = CellChain.path(cube4, [9, 8, 0, 4, 12, 13, 15, 7])
        p_prev = CellChain.path(cube4, [9, 1, 5, 13, 15, 7])
        s_verts = s.vertex_set()
        entry = next(v for v in p_i.verts if v in s_verts)

        p_new, bridge = flatten_path(cube4, s, p_i, p_prev)
        new_x = [v for v in p_new.verts if v in s_verts]
        x_edges = {edge_key(u, v) for u, v in zip(p_new.verts,
                                                  p_new.verts[1:])
                   if u in s_verts and v in s_verts}
        # the flattened intersection satisfies the flatness conditions
        from celltopo.flatness import subset_flatness
        report = subset_flatness(cube4, new_x, x_edges)
        assert report, report.problems
        assert new_x[0] == entry
        assert bridge.steps[-1].verts == p_new.verts
        for step in bridge.steps[:-1]:
            assert not (set(step.verts) & s_verts)
