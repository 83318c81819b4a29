"""
Checking the braid relation
===========================

Builds the operators shipped with the package, checks the braid relation,
and shows how column sums decide whether trivial walls are allowed.
"""

from ybhomology import (
    FractionField,
    LaurentPoly,
    QQ_Q,
    RationalFunction,
    RingMatrix,
    TrivialWall,
    build_example_4_9,
    build_sl2,
    check_wall_condition,
    check_yb_linear,
    check_yb_set,
    column_unital,
    dihedral_quandle_birack,
    normalize_columns,
    substitute_y_squared,
)

# A set-theoretic operator: the rack map of the three-element dihedral quandle.
rack = dihedral_quandle_birack(3)
print(rack.name, "braids:", check_yb_set(rack))

# The unital family over Q[y, 1/y].  Every column of R sums to 1.
for m in (2, 3):
    op = build_example_4_9(m)
    print(op.name, "braids:", check_yb_linear(op), "column unital:", column_unital(op))

# The quantum sl2 operator braids too, but its columns do not sum to 1, so the
# trivial wall is rejected.
sl2 = build_sl2()
print(sl2.name, "braids:", check_yb_linear(sl2), "column unital:", column_unital(sl2))
print("trivial left wall ok:", check_wall_condition(sl2, TrivialWall("left", 2, sl2.ring)))
print(sl2.matrix().pretty())

# Dividing every column by its sum lands in Q(q).  Substituting
# y^2 = 1 / (1 + q^-1 - q) into the m = 2 unital operator gives the same matrix.
q = QQ_Q.gen()
field = FractionField(QQ_Q)
t = RationalFunction(LaurentPoly.constant(1, "q"), 1 + q**-1 - q)
unital = build_example_4_9(2).matrix()
substituted = RingMatrix(field, 4, 4, {k: field.coerce(substitute_y_squared(v, t)) for k, v in unital.entries.items()})
print("normalized sl2 == substituted family:", normalize_columns(sl2).matrix() == substituted)
