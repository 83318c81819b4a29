"""
Torsion in the two-term homology of the m = 2 unital operator
=============================================================

Over Q[y, 1/y] with trivial walls on both sides, every homology group seen
so far is free of rank 2 plus copies of k/(y^2 - 1) and k/(y^4 - 1).  This
script prints the multiplicities and compares them with the predicted
recurrence.  The prediction does not hold; the report says where.
"""

from ybhomology import conjecture_check, fib_partial_sum

rep = conjecture_check(6)

print(" n  free  y^2-1  y^4-1")
for n in rep.table.degrees():
    print(f"{n:2d}  {rep.free_ranks[n]:4d}  {rep.mult_y2[n]:5d}  {rep.mult_y4[n]:5d}")

print("a_n computed:      ", rep.a)
print("a_n from recursion:", rep.a_expected)
print("residuals:", rep.recurrence_residual)

# What does hold: the torsion count t_n = a_n + (y^4-1 multiplicity) obeys
# 2^n = 2 + t_{n-1} + t_n, and the y^4 - 1 multiplicity in H_n is the
# Fibonacci partial sum s_{n-2} once s_0 is taken to be 1.
print("2^n - 2 - t_(n-1) - t_n:", rep.shifted_residual)
print("y^4-1 multiplicities:", [rep.mult_y4[n] for n in rep.table.degrees()])
print("s_(n-2), s_0 = 1:     ", [fib_partial_sum(n - 2, "natural") for n in rep.table.degrees()])

for line in rep.failures():
    print("  -", line)
