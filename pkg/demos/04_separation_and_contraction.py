"""
Separation and constructive contraction
=======================================

A closed locally flat submanifold of a sphere-like manifold cuts it into
two components sharing it as boundary.  Each component then dissolves,
farthest cell first, down to a single seed cell; the recorded removal
sequence replays backwards as the expansion witnessing the component is
one cell.
"""

import os
import tempfile

from celltopo import generators
from celltopo import io as dio
from celltopo.complexes import CellChain
from celltopo.separation import (components_of_complement, contract_to_cell,
                                 flatten_path, invert_trace, replay,
                                 verify_contraction_trace)

# Octahedron and equator: two bowls of four triangles each.
octa = generators.octahedron()
equator = generators.equator(octa, "octahedron")
report = components_of_complement(octa, equator)
print("octahedron split:", report.sizes, "common boundary:",
      all(report.boundary_ok))
print("pole crossing parity:", report.crossing_parities)

# The 4-simplex boundary with the tetrahedron sphere: one cell inside,
# four outside.
s4 = generators.simplex_boundary(4)
sphere = generators.equator(s4, "simplex-boundary")
report4 = components_of_complement(s4, sphere)
print("4-simplex split:", sorted(report4.sizes))

# Contract the four-cell component; the trace shrinks it one cell per
# step while the surface stays a closed pseudo-manifold.
component = next(c for c in report4.components if len(c) == 4)
seed = sorted(component)[0]
trace = contract_to_cell(s4, component, sphere, seed)
print("removals:", [r.cell for r in trace.removals])
print("trace verified:",
      bool(verify_contraction_trace(s4, component, sphere, trace)))

# Inversion replays the removals backwards: the expansion grows the seed
# boundary back into the original sphere.
expansion = invert_trace(trace)
print("expansion recovers the sphere:",
      replay(expansion) == frozenset(sphere.cells))

# A torus meridian does not separate: one component, and contraction hits
# the configuration the construction refuses.
torus = generators.torus_grid(4, 4)
meridian = generators.torus_meridian(torus, 4)
print("torus split:", components_of_complement(torus, meridian).sizes)

# Path flattening on the 4-cube boundary: a path dips into the facet
# sphere with a non-flat intersection; one pivot straightens it and a
# bridge reconnects the previous path without touching the sphere.
cube4 = generators.cube_boundary(4)
faces = [(2, (0, 2, 4, 6)), (2, (8, 10, 12, 14)), (2, (0, 2, 8, 10)),
         (2, (4, 6, 12, 14)), (2, (0, 4, 8, 12)), (2, (2, 6, 10, 14))]
s = CellChain.of_cells(cube4, 2, faces, closed=True)
p_i = CellChain.path(cube4, [9, 8, 0, 4, 12, 13, 15, 7])
p_prev = CellChain.path(cube4, [9, 1, 5, 13, 15, 7])
p_new, bridge = flatten_path(cube4, s, p_i, p_prev)
print("flattened path:", p_new.verts)
print("bridge:", [step.verts for step in bridge.steps])

# Everything serializes: write the contraction trace, read it back, and
# confirm the canonical form is stable.
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "trace.dsctrace")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dio.save_trace(s4, sphere, trace))
    space2, chains2, trace2 = dio.load_trace(open(path).read())
    print("trace file round-trips:", trace2.removals == trace.removals)
