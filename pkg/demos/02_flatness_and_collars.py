"""
Local flatness and collars
==========================

A curve is locally flat when every vertex pair keeps cell distance three
at every level, unless a focal vertex mediates a distance-two pair or the
pair is adjacent along the curve.  Flat curves, and only they, own a
collar: two non-self-intersecting sheets at cell distance one.
"""

from celltopo import generators
from celltopo.errors import PreconditionError
from celltopo.flatness import (build_collar, find_focal_points,
                               is_locally_flat, verify_collar)

# The named cases bundle a small complex with a curve whose verdict the
# checker reproduces.
for case_id in ("fig2a", "fig3a", "fig3b", "fig3c", "fig4", "fig5",
                "fig6a", "fig6b"):
    space, curve = generators.figure_case(case_id)
    report = is_locally_flat(space, curve)
    print("%-6s flat=%-5s" % (case_id, bool(report)),
          ("" if report else "first violation: " + report.problems[0]))

# fig5 is the corner saved by one separating vertex: the focal point's
# link meets the curve in the whole corner arc.
space5, curve5 = generators.figure_case("fig5")
print("fig5 focal points:", find_focal_points(space5, curve5))

# Collar of the octahedron equator: one pole per side.
octa = generators.octahedron()
equator = generators.equator(octa, "octahedron")
cert = build_collar(octa, equator)
print("equator sheets:", [sorted(s) for s in cert.sheets])
print("witnesses:", dict(sorted(cert.witness.items())))
print("independent re-check:", bool(verify_collar(octa, equator, cert)))

# A non-flat curve has no collar; the builder refuses with the reason.
space6, curve6 = generators.figure_case("fig6a")
try:
    build_collar(space6, curve6)
except PreconditionError as exc:
    print("fig6a collar refused:", exc)

# The lift to higher dimension: the tetrahedron 2-sphere inside the
# 4-simplex boundary has a one-sheet collar, because its inner side is a
# single cell with no off-sphere vertices.
s4 = generators.simplex_boundary(4)
sphere = generators.equator(s4, "simplex-boundary")
cert4 = build_collar(s4, sphere)
print("tetrahedron-sphere sheets:", [sorted(s) for s in cert4.sheets])
