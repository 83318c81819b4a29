import json

import pytest

from ybhomology import (
    QQ,
    QY,
    ZZ,
    LinearOp,
    OperatorSpecError,
    RingMatrix,
    SetTheoreticOp,
    TrivialWall,
    WallMap,
    birack_right_invertibility,
    build_alexander_birack,
    build_example_4_9,
    build_sl2,
    check_wall_condition,
    check_yb_linear,
    check_yb_set,
    column_unital,
    dihedral_quandle_birack,
    identity,
    is_invertible,
    linearize,
    load_operator,
    normalize_columns,
    operator_from_json_obj,
    operator_to_json_obj,
    set_op_from_function,
    transposition,
)

from .test_acceptance import linear_corpus, set_corpus


@pytest.mark.parametrize("op", set_corpus(), ids=lambda o: o.name)
def test_set_corpus_braids(op):
    assert check_yb_set(op)
    assert op.is_bijective()
    assert check_yb_linear(linearize(op))


def test_non_braided_set_map():
    op = set_op_from_function(3, lambda a, b: (a + 1, b), name="shift")
    assert not check_yb_set(op)
    assert not check_yb_linear(linearize(op))


def test_dihedral_is_a_rack_operator():
    op = dihedral_quandle_birack(3)
    assert op(0, 1) == (1, 2)
    assert birack_right_invertibility(op)


@pytest.mark.parametrize("p, s, t", [(5, 1, 2), (3, 1, 2), (7, 1, 3)])
def test_alexander_birack(p, s, t):
    op = build_alexander_birack(p, s, t)
    assert check_yb_set(op)
    assert birack_right_invertibility(op)


@pytest.mark.parametrize("p, s, t", [(4, 1, 2), (5, 0, 2), (5, 2, 3)])
def test_alexander_preconditions(p, s, t):
    with pytest.raises(OperatorSpecError):
        build_alexander_birack(p, s, t)


def test_example_family_entries():
    y = QY.gen()
    op = build_example_4_9(2)
    # 1-based (i, j) -> (k, l): (1,2) -> y^2 (2,1) + (1-y^2) (1,2), (2,1) -> (1,2)
    assert op.coeff(0, 1, 1, 0) == y**2
    assert op.coeff(0, 1, 0, 1) == 1 - y**2
    assert op.coeff(1, 0, 0, 1) == 1
    assert op.coeff(1, 1, 1, 1) == 1
    assert is_invertible(op)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_example_family_braids_and_is_unital(m):
    op = build_example_4_9(m)
    assert check_yb_linear(op)
    assert column_unital(op)


def test_sl2_properties():
    op = build_sl2()
    assert check_yb_linear(op)
    assert not column_unital(op)
    assert is_invertible(op)
    assert column_unital(normalize_columns(op))


@pytest.mark.parametrize("op", linear_corpus() + [build_sl2()], ids=lambda o: o.name)
def test_trivial_wall_condition_equals_column_unitality(op):
    for side in ("left", "right"):
        assert check_wall_condition(op, TrivialWall(side, op.m, op.ring)) == column_unital(op)


def test_non_invertible_operator():
    op = linearize(set_op_from_function(2, lambda a, b: (a, a)))
    assert not is_invertible(op)
    two = LinearOp(1, ZZ, {(0, 0): {(0, 0): 2}})
    assert not is_invertible(two)
    assert is_invertible(LinearOp(1, QQ, {(0, 0): {(0, 0): 2}}))


def test_wall_shape_validation():
    with pytest.raises(OperatorSpecError):
        WallMap("left", 1, 2, RingMatrix.zeros(ZZ, 1, 3))
    with pytest.raises(OperatorSpecError):
        WallMap("up", 1, 2, RingMatrix.zeros(ZZ, 1, 2))
    with pytest.raises(OperatorSpecError):
        check_wall_condition(build_example_4_9(2), TrivialWall("left", 3, QY))


def test_set_table_validation():
    with pytest.raises(OperatorSpecError):
        SetTheoreticOp(2, (((0, 0), (0, 1)), ((1, 0), (2, 1))))
    with pytest.raises(OperatorSpecError):
        SetTheoreticOp(2, (((0, 0),),))


@pytest.mark.parametrize(
    "op", [transposition(3), identity(2), build_example_4_9(3), build_sl2()], ids=lambda o: o.name
)
def test_json_round_trip(op):
    back = operator_from_json_obj(json.loads(json.dumps(operator_to_json_obj(op))))
    if isinstance(op, SetTheoreticOp):
        assert back == op
    else:
        assert back.ring == op.ring and back.matrix() == op.matrix()


def test_json_linear_spec_is_one_based(tmp_path):
    spec = {
        "kind": "linear",
        "ring": "Qy",
        "m": 2,
        "entries": [
            {"in": [1, 1], "out": [1, 1], "coeff": "1"},
            {"in": [1, 2], "out": [2, 1], "coeff": "y^2"},
            {"in": [1, 2], "out": [1, 2], "coeff": "1-y^2"},
            {"in": [2, 1], "out": [1, 2], "coeff": "1"},
            {"in": [2, 2], "out": [2, 2], "coeff": "1"},
        ],
    }
    path = tmp_path / "op.json"
    path.write_text(json.dumps(spec))
    assert load_operator(path).matrix() == build_example_4_9(2).matrix()


@pytest.mark.parametrize(
    "spec",
    [
        {"kind": "builtin", "name": "nope"},
        {"kind": "linear", "ring": "Z", "m": 2, "entries": [{"in": [3, 1], "out": [1, 1], "coeff": "1"}]},
        {"kind": "linear", "ring": "Z", "m": 2, "entries": [{"in": [1, 1], "out": [1, 1], "coeff": "y"}]},
        {"kind": "set", "size": 2},
        {"kind": "tensor"},
        ["not", "an", "object"],
    ],
)
def test_bad_specs(spec):
    with pytest.raises(OperatorSpecError):
        operator_from_json_obj(spec)


def test_bad_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(OperatorSpecError):
        load_operator(path)
