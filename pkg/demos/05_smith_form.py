"""
Smith normal form with transforms
=================================

smith_normal_form returns D together with unimodular U and V such that
A = U D V.  The same code runs over Z, over prime fields and over the
Laurent ring Q[y, 1/y].
"""

from ybhomology import GF, QY, ZZ, RingMatrix, determinant, fraction_free_rank, smith_normal_form

A = RingMatrix.from_dense(ZZ, [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
res = smith_normal_form(A)
print("invariant factors over Z:", res.d)
print("A == U D V:", res.u @ res.diagonal() @ res.v == A)
print("det U, det V:", determinant(res.u), determinant(res.v))

F = GF(3)
print("over F_3:", smith_normal_form(A.map(F.coerce, F)).d)

y = QY.gen()
B = RingMatrix(QY, 2, 3, {(0, 0): y**2 - 1, (0, 1): y - 1, (1, 1): y**3 - y, (1, 2): 1 - y**4})
res = smith_normal_form(B)
print("invariant factors over Q[y, 1/y]:", [str(d) for d in res.d])
print("B == U D V:", res.u @ res.diagonal() @ res.v == B)
print("rank agrees with Bareiss elimination:", res.rank == fraction_free_rank(B))
