from fractions import Fraction

import pytest

from ybhomology import (
    QQ,
    QY,
    ZZ,
    RingMatrix,
    TrivialWall,
    build_example_4_9,
    conjecture_check,
    dihedral_quandle_birack,
    equivalence_verdict,
    fib_partial_sum,
    fibonacci,
    fraction_free_rank,
    graphic_complex,
    homology_table,
    is_unit_determinant,
    linearize,
    recurrence_a_values,
    transposition,
    triviality_certificate,
    two_term_complex,
)

from .test_acceptance import walls_for

TOP = 4


@pytest.fixture(scope="module")
def unital_table():
    op = build_example_4_9(2)
    walls = walls_for(op)
    cx = two_term_complex(op, walls, TOP + 1)
    return cx, homology_table(cx, 0, TOP)


def specialized(M, value):
    return RingMatrix(QQ, M.rows, M.cols, {k: v.evaluate(Fraction(value)) for k, v in M.entries.items()})


@pytest.mark.parametrize("value", [1, -1, 2, Fraction(1, 3)])
def test_specialization_matches_universal_coefficients(unital_table, value):
    # H_n(C at y=a; Q) = H_n (x) Q_a + Tor(H_{n-1}, Q_a); a torsion factor t
    # contributes to both terms exactly when t(a) = 0
    cx, table = unital_table
    for n in range(1, TOP + 1):
        rank_n = fraction_free_rank(specialized(cx.boundary(n), value))
        rank_n1 = fraction_free_rank(specialized(cx.boundary(n + 1), value))
        dim = cx.rank(n) - rank_n - rank_n1
        vanish = lambda h: sum(1 for t in h.torsion if t.evaluate(Fraction(value)) == 0)  # noqa: E731
        assert dim == table[n].free_rank + vanish(table[n]) + vanish(table[n - 1])


def test_unital_family_low_degrees(unital_table):
    _, table = unital_table
    y = QY.gen()
    t2, t4 = QY.canonical_associate(y**2 - 1), QY.canonical_associate(y**4 - 1)
    counts = [(table[n].free_rank, table[n].torsion.count(t2), table[n].torsion.count(t4)) for n in range(1, TOP + 1)]
    assert counts == [(2, 0, 0), (2, 1, 1), (2, 2, 2), (2, 6, 4)]


def test_conjecture_report_structure():
    rep = conjecture_check(4)
    assert rep.free_rank_ok and rep.torsion_shape_ok
    assert rep.a == [0, 1, 2, 6]
    assert rep.s == {-1: 0, 0: 1, 1: 2, 2: 4}
    assert rep.shifted_residual == {2: 0, 3: 0, 4: 0}
    # n = 4 would need s_3, which lives in H_5
    assert rep.recurrence_residual == {3: -3}
    assert not rep.passed
    obj = rep.to_json_obj()
    assert obj["conjecture"]["passed"] is False
    assert obj["conjecture"]["failures"]


def test_conjecture_parallel_is_deterministic():
    a = conjecture_check(3, jobs=1)
    b = conjecture_check(3, jobs=2)
    assert a.table.same_groups(b.table)
    assert a.to_json_obj() == b.to_json_obj()


def test_conjecture_degree_limits():
    with pytest.raises(ValueError):
        conjecture_check(7)
    with pytest.raises(ValueError):
        conjecture_check(9, stretch=True)
    with pytest.raises(ValueError):
        conjecture_check(0)


def test_fibonacci_helpers():
    assert [fibonacci(k) for k in range(8)] == [0, 1, 1, 2, 3, 5, 8, 13]
    assert [fib_partial_sum(n) for n in range(-1, 6)] == [0, 0, 2, 4, 7, 12, 20]
    assert [fib_partial_sum(n, "natural") for n in range(-1, 3)] == [0, 1, 2, 4]
    assert recurrence_a_values(6) == [0, 0, 0, 3, 8, 22]
    with pytest.raises(ValueError):
        fib_partial_sum(0, "other")


def test_table_serialization():
    cx = graphic_complex(dihedral_quandle_birack(3), 4)
    table = homology_table(cx, 0, 3)
    assert table.to_csv().splitlines() == ["n,free_rank,torsion", "0,1,", "1,1,", "2,1,", "3,1,3"]
    rows = table.to_json_obj()["rows"]
    assert rows[3] == {"n": 3, "free_rank": 1, "torsion": ["3"]}


def test_table_range_checks():
    cx = graphic_complex(transposition(2), 2)
    with pytest.raises(ValueError):
        homology_table(cx, 0, 2)


@pytest.mark.parametrize("op", [transposition(2), dihedral_quandle_birack(3)], ids=lambda o: o.name)
def test_equivalence_report(op):
    rep = equivalence_verdict(op, 4)
    assert rep.passed and rep.matrix_match == {1: True, 2: True, 3: True, 4: True}
    obj = rep.to_json_obj()
    assert obj["passed"] is True


def test_triviality_certificate_for_rack():
    op = linearize(dihedral_quandle_birack(3))
    cert = triviality_certificate(op, walls_for(op)[0], 3)
    assert cert.found and cert.consistent
    obj = cert.to_json_obj()
    assert obj["vector"] == 1 and obj["invertible"]["1"] == [True] * 4
    assert [r["free_rank"] for r in obj["direct"]["rows"]] == [0, 0, 0, 0]


def test_triviality_certificate_for_unital_family():
    op = build_example_4_9(2)
    cert = triviality_certificate(op, TrivialWall("left", 2, QY), 3, direct_max=2)
    assert cert.found and cert.consistent


def test_unit_determinant():
    assert is_unit_determinant(RingMatrix(ZZ, 2, 2, {(0, 1): -1, (1, 0): 1}))
    assert not is_unit_determinant(RingMatrix(ZZ, 2, 2, {(0, 1): 2, (1, 0): 1}))
    assert is_unit_determinant(RingMatrix.from_dense(ZZ, [[2, 1], [1, 1]]))
    assert not is_unit_determinant(RingMatrix.from_dense(ZZ, [[2, 0], [0, 1], [0, 0]]))
    y = QY.gen()
    assert is_unit_determinant(RingMatrix(QY, 2, 2, {(0, 0): 3 * y, (1, 1): y**-4}))
