"""
One-term homology and the append homotopy
=========================================

Appending a fixed basis vector v gives maps P_n: C_n -> C_{n+1}.  The
combination d P + P d equals c times f_n, where f_n is the top face applied
after appending v.  When every f_n is invertible the one-term homology
vanishes.
"""

from ybhomology import (
    TrivialWall,
    build_example_4_9,
    dihedral_quandle_birack,
    homology_table,
    homotopy_check,
    linearize,
    one_term_complex,
    triviality_certificate,
)

op = linearize(dihedral_quandle_birack(3))
wall = TrivialWall("left", op.m, op.ring)

for row in homotopy_check(op, wall, 3, 0):
    print(f"n={row['n']}: c = {row['c']}, lower faces commute with appending: {row['cancellation']}")

cert = triviality_certificate(op, wall, 4)
print("certificate vector (1-based):", cert.to_json_obj()["vector"])
for n, h in cert.direct.rows.items():
    print(f"  direct H_{n} = {h.describe()}")

# The same experiment over Q[y, 1/y].
unital = build_example_4_9(2)
wall = TrivialWall("left", 2, unital.ring)
print("unital family certificate found:", triviality_certificate(unital, wall, 3, direct_max=2).found)
print(homology_table(one_term_complex(unital, wall, 3), 0, 2).to_csv())
