"""
Two boundaries for a set-theoretic operator
===========================================

The graphic boundary drags a strand out of the diagram to the left or right.
The algebraic boundary reads faces off the colored n-cube.  They differ by
the global sign (-1)^(n+1), so the homology agrees.
"""

from ybhomology import (
    algebraic_complex,
    build_alexander_birack,
    cube_coloring,
    dihedral_quandle_birack,
    equivalence_verdict,
    face_label,
    graphic_complex,
    graphic_face,
    homology_table,
)

op = dihedral_quandle_birack(3)

# One coloring of the 3-cube, and the labels on its six codimension-one faces.
x = (0, 1, 2)
col = cube_coloring(op, x)
for i in (1, 2, 3):
    print(f"face {i}: eps=1 {face_label(col, i, 1)}  left drag {graphic_face(op, 'left', i, 3, x)}")
    print(f"        eps=0 {face_label(col, i, 0)}  right drag {graphic_face(op, 'right', i, 3, x)}")

# Compare the boundary matrices degree by degree.
g = graphic_complex(op, 4)
a = algebraic_complex(op, 4)
for n in range(1, 5):
    sign = 1 if n % 2 else -1
    print(f"n={n}: algebraic == {sign:+d} * graphic ->", a.boundary(n) == g.boundary(n).scale(sign))

# The homology of this complex is the rack homology of R_3.
for n, h in homology_table(g, 0, 3).rows.items():
    print(f"H_{n} = {h.describe()}")

# The same comparison packaged as a report, for an Alexander birack.
rep = equivalence_verdict(build_alexander_birack(3, 1, 2), 4)
print(rep.operator, "passed:", rep.passed)
