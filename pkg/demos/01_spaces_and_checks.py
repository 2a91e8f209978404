"""
Building discrete spaces and running the structural checks
===========================================================

A discrete space is a finite graph plus registries of cells, one registry
per dimension.  Every cell is stored by its sorted vertex tuple, and its
boundary is a closed minimal cycle of cells one dimension down.
"""

from celltopo import generators
from celltopo.complexes import (check_regular, is_closed_manifold,
                                is_discrete_curve, is_minimal_cycle, link,
                                partial_graph, star)
from celltopo.metrics import (graph_distance, k_cell_distance,
                              verify_distance_equality)

# The octahedron: the smallest closed triangulated 2-sphere with a flat
# equator.  Poles are vertices 0 and 5, the equator is the cycle 1-2-3-4.
octa = generators.octahedron()
print("octahedron:", octa.n_vertices, "vertices,", len(octa.edges),
      "edges,", len(octa.cells_of_dim(2)), "triangles")

# The regularity report covers all four manifold clauses at once.
print("regular:", bool(check_regular(octa)))
print("closed:", is_closed_manifold(octa))

# The partial graph of a vertex set keeps exactly the edges inside it.
print("edges inside the equator:", sorted(partial_graph(octa, {1, 2, 3, 4})))

# The equator is a minimal cycle (no chords), and a discrete curve (it
# does not swallow any triangle).
equator = generators.equator(octa, "octahedron")
print("equator minimal:", is_minimal_cycle(octa, equator))
print("equator discrete curve:", is_discrete_curve(octa, equator))

# Star and link of the north pole: the star grabs everything touching it
# plus all boundary faces; the link removes whatever touches the pole,
# leaving the equator cycle.
st = star(octa, {0})
print("star of the north pole:", sum(1 for _ in st.cells()), "cells")
lk = link(octa, {0})
print("link of the north pole:", sorted(lk.vertices()), "with edges",
      sorted(lk.edges()))

# Distances: the poles are two edges apart, and also two triangles apart.
print("graph distance of the poles:", graph_distance(octa, 0, 5))
print("2-cell distance of the poles:", k_cell_distance(octa, 0, 5, 2))

# On triangulated spaces every distance level agrees; the check below
# walks all vertex pairs of the 4-simplex boundary at every level.
simplex4 = generators.simplex_boundary(4)
print("distance equality on the 4-simplex boundary:",
      bool(verify_distance_equality(simplex4)))

# Quadrilateral cells break the equality: on the cube two corners of a
# shared face can be three edges apart yet only two faces apart.
cube = generators.cube_boundary(3)
print("cube corner pair: graph distance", graph_distance(cube, 4, 3),
      "face distance", k_cell_distance(cube, 4, 3, 2))
