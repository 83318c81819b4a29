import dataclasses
import json
import shutil
import subprocess

import pytest

from ybhomology import RingMatrix, ZZ, cli
from ybhomology.homology import BrokenComplexError


def spec(tmp_path, name, obj):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def ops(tmp_path):
    return {
        "example49": spec(tmp_path, "e49", {"kind": "builtin", "name": "example49", "params": {"m": 2}}),
        "sl2": spec(tmp_path, "sl2", {"kind": "builtin", "name": "sl2"}),
        "dihedral": spec(tmp_path, "d3", {"kind": "builtin", "name": "dihedral", "params": {"q": 3}}),
        "garbage": spec(tmp_path, "bad", {"kind": "nonsense"}),
    }


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_passes(capsys, ops):
    code, out, _ = run(capsys, "check", ops["example49"], "--no-meta")
    assert code == cli.EXIT_OK
    results = json.loads(out)["results"]
    assert results["yb"] and results["column_unital"] and results["walls"] == {"left": True, "right": True}


def test_check_negative_verdict(capsys, ops):
    code, out, _ = run(capsys, "check", ops["sl2"], "--column-unital", "--no-meta")
    assert code == cli.EXIT_NEGATIVE
    assert json.loads(out)["results"] == {"column_unital": False}


def test_check_set_operator_includes_birack(capsys, ops):
    code, out, _ = run(capsys, "check", ops["dihedral"], "--no-meta")
    assert code == cli.EXIT_OK
    assert json.loads(out)["results"]["birack"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "{garbage}"),
        ("check", "/nonexistent/op.json"),
        ("check", "{example49}", "--birack"),
        ("homology", "{sl2}", "--theory", "two-term"),
        ("homology", "{example49}", "--theory", "graphic"),
        ("homology", "{dihedral}", "--theory", "graphic", "--ring", "Fp:4"),
        ("homology", "{dihedral}", "--theory", "sideways"),
        ("homology", "{example49}", "--theory", "one-term", "--ring", "Z"),
        ("equivalence", "{example49}"),
        ("conjecture", "--n-max", "7"),
        ("conjecture", "--jobs", "0"),
        ("check", "{example49}", "--csv"),
        ("frobnicate",),
    ],
)
def test_usage_errors(capsys, ops, argv):
    code, _, _ = run(capsys, *(a.format(**ops) for a in argv))
    assert code == cli.EXIT_USAGE


def test_homology_table_and_csv(capsys, ops):
    code, out, _ = run(capsys, "homology", ops["dihedral"], "--theory", "graphic", "--n-max", "3", "--csv")
    assert code == cli.EXIT_OK
    assert out.splitlines() == ["n,free_rank,torsion", "0,1,", "1,1,", "2,1,", "3,1,3"]


def test_set_operator_linearized_for_one_term(capsys, ops):
    code, out, err = run(capsys, "homology", ops["dihedral"], "--theory", "one-term", "--n-max", "2", "--no-meta")
    assert code == cli.EXIT_OK
    assert "linearizing" in err
    assert all(r["free_rank"] == 0 and not r["torsion"] for r in json.loads(out)["rows"])


def test_ring_change(capsys, ops):
    code, out, _ = run(
        capsys, "homology", ops["dihedral"], "--theory", "graphic", "--n-max", "3", "--ring", "Fp:3", "--no-meta"
    )
    assert code == cli.EXIT_OK
    rows = json.loads(out)["rows"]
    # Z/3 torsion in H_3 turns into an extra dimension in H_3 and H_4 only
    assert [r["free_rank"] for r in rows] == [1, 1, 1, 2]


def test_no_meta_output_is_reproducible(capsys, ops):
    argv = ("homology", ops["example49"], "--theory", "two-term", "--n-max", "2", "--no-meta")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert "meta" not in json.loads(first)
    with_meta = json.loads(run(capsys, *argv[:-1])[1])
    assert with_meta["meta"]["tool"] == "ybh"


def test_out_file(capsys, ops, tmp_path):
    target = tmp_path / "table.json"
    code, out, _ = run(capsys, "boundary", ops["dihedral"], "--theory", "algebraic", "--n-max", "2", "--out", str(target))
    assert code == cli.EXIT_OK and out == ""
    obj = json.loads(target.read_text())
    assert obj["theory"] == "algebraic" and len(obj["degrees"]) == 3


def test_equivalence(capsys, ops):
    code, out, _ = run(capsys, "equivalence", ops["dihedral"], "--n-max", "3", "--no-meta")
    assert code == cli.EXIT_OK
    obj = json.loads(out)
    assert obj["passed"] is True and obj["diagnostics"] == []


def test_conjecture_reports_honest_failure(capsys):
    code, out, err = run(capsys, "conjecture", "--n-max", "4", "--no-meta")
    assert code == cli.EXIT_NEGATIVE
    report = json.loads(out)["conjecture"]
    assert report["free_rank_ok"] and report["torsion_shape_ok"]
    assert report["a"] == [0, 1, 2, 6]
    assert "recurrence at n=3 off by -3" in err


def test_snf(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(RingMatrix.from_dense(ZZ, [[2, 4], [6, 8]]).to_json())
    code, out, _ = run(capsys, "snf", str(path), "--no-meta")
    assert code == cli.EXIT_OK
    obj = json.loads(out)
    assert obj["invariant_factors"] == ["2", "4"] and obj["rank"] == 2
    u = RingMatrix.from_json_obj(obj["u"])
    v = RingMatrix.from_json_obj(obj["v"])
    D = RingMatrix(ZZ, 2, 2, {(0, 0): 2, (1, 1): 4})
    assert u @ D @ v == RingMatrix.from_dense(ZZ, [[2, 4], [6, 8]])
    code, out, _ = run(capsys, "snf", str(path), "--ring", "Fp:3", "--csv")
    assert code == cli.EXIT_OK and out == "index,factor\n1,1\n2,1\n"


def test_snf_bad_matrix(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"ring": "Z", "rows": 1}')
    assert run(capsys, "snf", str(path))[0] == cli.EXIT_USAGE
    path.write_text('{"ring": "Qq", "rows": 1, "cols": 1, "entries": [[0, 0, "q"]]}')
    assert run(capsys, "snf", str(path), "--ring", "Z")[0] == cli.EXIT_USAGE


def _broken(builder):
    def build(op, top, jobs=1):
        cx = builder(op, top, jobs=jobs)
        bad = dict(cx.boundaries)
        bad[2] = bad[2].scale(2) + RingMatrix(ZZ, bad[2].rows, bad[2].cols, {(0, 0): 1})
        return dataclasses.replace(cx, boundaries=bad)

    return build


def test_broken_complex_exits_with_breach(capsys, ops, monkeypatch):
    monkeypatch.setattr(cli, "graphic_complex", _broken(cli.graphic_complex))
    for command in ("boundary", "homology"):
        code, _, err = run(capsys, command, ops["dihedral"], "--theory", "graphic", "--n-max", "3")
        assert code == cli.EXIT_BREACH
        assert "invariant breach" in err


def test_breach_is_not_masked_by_negative_verdict(capsys, ops, monkeypatch):
    def boom(*args, **kwargs):
        raise BrokenComplexError("composite is nonzero")

    monkeypatch.setattr(cli, "equivalence_verdict", boom)
    assert run(capsys, "equivalence", ops["dihedral"])[0] == cli.EXIT_BREACH


@pytest.mark.skipif(shutil.which("ybh") is None, reason="console script not installed")
def test_console_script(ops):
    proc = subprocess.run(["ybh", "check", ops["sl2"], "--yb", "--no-meta"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"] == {"yb": True}
