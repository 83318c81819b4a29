"""``ybh`` command line entry point.

Exit status: 0 verified, 1 negative mathematical verdict, 2 usage or input
error, 3 internal invariant breach (nonzero boundary composite, incomplete
coloring, homotopy mismatch).
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime
import json
import sys

from . import __version__
from .complexes import (
    ChainComplex,
    ColoringError,
    HomotopyError,
    WallConditionError,
    algebraic_complex,
    graphic_complex,
    one_term_complex,
    two_term_complex,
)
from .engine import conjecture_check, equivalence_verdict, homology_table
from .homology import BrokenComplexError
from .matrix import RingMatrix
from .operators import (
    LinearOp,
    OperatorSpecError,
    SetTheoreticOp,
    WallMap,
    birack_right_invertibility,
    check_wall_condition,
    check_yb_linear,
    check_yb_set,
    column_unital,
    is_invertible,
    linearize,
    load_operator,
)
from .rings import QQ, ZZ, PrimeField, UnsupportedRingError, ring_from_code
from .snf import smith_normal_form

__all__ = ["main", "EXIT_OK", "EXIT_NEGATIVE", "EXIT_USAGE", "EXIT_BREACH"]

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BREACH = 3

THEORIES = ("graphic", "algebraic", "one-term", "two-term")
INLINE_LIMIT = 20


class UsageError(Exception):
    pass


def _notice(msg):
    print(f"ybh: {msg}", file=sys.stderr)


def _emit(args, obj, csv_text=None):
    if args.csv:
        if csv_text is None:
            raise UsageError(f"--csv is not available for '{args.command}'")
        text = csv_text
    else:
        if not args.no_meta:
            obj = {
                **obj,
                "meta": {
                    "tool": "ybh",
                    "version": __version__,
                    "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
                },
            }
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return load_operator(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _ring(args, default):
    if not args.ring:
        return default
    try:
        return ring_from_code(args.ring)
    except UnsupportedRingError as exc:
        raise UsageError(str(exc)) from None


def _rings_compatible(src, dst):
    if src == dst:
        return True
    if src == ZZ:
        return True
    return src == QQ and isinstance(dst, PrimeField)


def _linear_over(op: LinearOp, ring):
    if op.ring == ring:
        return op
    if not _rings_compatible(op.ring, ring):
        raise UsageError(f"cannot change coefficients of a {op.ring.code} operator to {ring.code}")
    coeffs = {key: {out: ring.coerce(c) for out, c in outs} for key, outs in op.images.items()}
    return LinearOp(op.m, ring, coeffs, op.name)


def _complex_over(cx: ChainComplex, ring):
    if cx.ring == ring:
        return cx
    if not _rings_compatible(cx.ring, ring):
        raise UsageError(f"cannot change coefficients from {cx.ring.code} to {ring.code}")
    bounds = {n: M.map(ring.coerce, ring) for n, M in cx.boundaries.items()}
    return dataclasses.replace(cx, ring=ring, boundaries=bounds)


def build_complex(op, theory, top, ring=None, jobs=1):
    """Complex of the requested theory through degree ``top``."""
    if theory in ("graphic", "algebraic"):
        if not isinstance(op, SetTheoreticOp):
            raise UsageError(f"--theory {theory} needs a set-theoretic operator")
        builder = graphic_complex if theory == "graphic" else algebraic_complex
        cx = builder(op, top, jobs=jobs)
        return _complex_over(cx, ring or ZZ)
    if isinstance(op, SetTheoreticOp):
        lin_ring = ring or ZZ
        _notice(f"linearizing set-theoretic operator over {lin_ring.code} with trivial walls")
        op = linearize(op, lin_ring)
    elif ring is not None:
        op = _linear_over(op, ring)
    try:
        if theory == "one-term":
            return one_term_complex(op, WallMap.trivial_wall("left", op.m, op.ring), top, jobs=jobs)
        walls = (WallMap.trivial_wall("left", op.m, op.ring), WallMap.trivial_wall("right", op.m, op.ring))
        return two_term_complex(op, walls, top, jobs=jobs)
    except WallConditionError as exc:
        raise UsageError(f"operator is incompatible with the trivial walls: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands


def run_check(args):
    op = _load(args.spec)
    wanted = [name for name in ("yb", "invertible", "column_unital", "birack", "walls") if getattr(args, name)]
    is_set = isinstance(op, SetTheoreticOp)
    if not wanted:
        wanted = ["yb", "invertible", "column_unital", "walls"] + (["birack"] if is_set else [])
    if "birack" in wanted and not is_set:
        raise UsageError("--birack needs a set-theoretic operator")
    lin = linearize(op) if is_set else op
    report = {}
    for name in wanted:
        if name == "yb":
            report["yb"] = check_yb_set(op) if is_set else check_yb_linear(op)
        elif name == "invertible":
            report["invertible"] = op.is_bijective() if is_set else is_invertible(op)
        elif name == "column_unital":
            report["column_unital"] = column_unital(lin)
        elif name == "birack":
            report["birack"] = birack_right_invertibility(op)
        elif name == "walls":
            report["walls"] = {
                side: check_wall_condition(lin, WallMap.trivial_wall(side, lin.m, lin.ring)) for side in ("left", "right")
            }
    verdicts = [v if isinstance(v, bool) else all(v.values()) for v in report.values()]
    _emit(args, {"command": "check", "operator": op.name, "kind": "set" if is_set else "linear", "results": report})
    return EXIT_OK if all(verdicts) else EXIT_NEGATIVE


def run_boundary(args):
    op = _load(args.spec)
    cx = build_complex(op, args.theory, args.n_max, _ring(args, None), args.jobs)
    cx.verify()
    _emit(args, cx.to_json_obj())
    return EXIT_OK


def run_homology(args):
    op = _load(args.spec)
    cx = build_complex(op, args.theory, args.n_max + 1, _ring(args, None), args.jobs)
    cx.verify()
    try:
        table = homology_table(cx, 0, args.n_max, jobs=args.jobs)
    except UnsupportedRingError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, table.to_json_obj(), table.to_csv())
    return EXIT_OK


def _inline(M: RingMatrix):
    if M.rows <= INLINE_LIMIT and M.cols <= INLINE_LIMIT:
        return M.to_json_obj()
    return {"shape": [M.rows, M.cols], "nnz": M.nnz(), "inlined": False}


def run_equivalence(args):
    op = _load(args.spec)
    if not isinstance(op, SetTheoreticOp):
        raise UsageError("equivalence needs a set-theoretic operator")
    rep = equivalence_verdict(op, args.n_max, jobs=args.jobs)
    obj = rep.to_json_obj()
    diagnostics = []
    for n, ok in sorted(rep.matrix_match.items()):
        if not ok:
            diagnostics.append(
                {
                    "n": n,
                    "algebraic": _inline(algebraic_complex(op, n).boundary(n)),
                    "graphic": _inline(graphic_complex(op, n).boundary(n)),
                }
            )
    for n in rep.graphic.degrees():
        if rep.graphic[n] != rep.algebraic[n]:
            diagnostics.append({"n": n, "graphic_homology": rep.graphic[n].describe(), "algebraic_homology": rep.algebraic[n].describe()})
    obj["diagnostics"] = diagnostics
    _emit(args, obj)
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def run_conjecture(args):
    n_max = 6 if args.n_max is None else args.n_max
    try:
        rep = conjecture_check(n_max, stretch=args.stretch, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not rep.passed:
        for line in rep.failures():
            _notice(line)
    _emit(args, rep.to_json_obj(), rep.table.to_csv())
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def run_snf(args):
    try:
        with open(args.matrix) as fh:
            M = RingMatrix.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.matrix}: {exc.strerror}") from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    ring = _ring(args, M.ring)
    if ring != M.ring:
        if not _rings_compatible(M.ring, ring):
            raise UsageError(f"cannot change matrix ring from {M.ring.code} to {ring.code}")
        M = M.map(ring.coerce, ring)
    try:
        res = smith_normal_form(M)
    except UnsupportedRingError as exc:
        raise UsageError(str(exc)) from None
    if not (res.u @ res.diagonal() @ res.v == M):
        raise ArithmeticError("Smith form does not reproduce the input")
    obj = {
        "ring": M.ring.code,
        "shape": [M.rows, M.cols],
        "rank": res.rank,
        "invariant_factors": [M.ring.format(x) for x in res.d],
        "u": _inline(res.u),
        "v": _inline(res.v),
    }
    csv_text = "index,factor\n" + "".join(f"{k + 1},{M.ring.format(x)}\n" for k, x in enumerate(res.d))
    _emit(args, obj, csv_text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="coefficient ring: Z, Q, Qy, Qq or Fp:<p>")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--csv", action="store_true", help="emit the table as CSV")
    common.add_argument("--no-meta", action="store_true", help="omit the timestamped meta block")

    p = argparse.ArgumentParser(prog="ybh", description="Homology of Yang-Baxter operators with exact arithmetic.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="verify operator properties")
    c.add_argument("spec")
    c.add_argument("--yb", action="store_true")
    c.add_argument("--invertible", action="store_true")
    c.add_argument("--column-unital", dest="column_unital", action="store_true")
    c.add_argument("--birack", action="store_true")
    c.add_argument("--walls", action="store_true")
    c.set_defaults(func=run_check)

    for name, func, helptext in (
        ("boundary", run_boundary, "dump boundary matrices"),
        ("homology", run_homology, "compute a homology table"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("spec")
        s.add_argument("--theory", choices=THEORIES, required=True)
        s.add_argument("--n-max", dest="n_max", type=_positive, default=4)
        s.set_defaults(func=func)

    e = sub.add_parser("equivalence", parents=[common], help="compare algebraic and graphic complexes")
    e.add_argument("spec")
    e.add_argument("--n-max", dest="n_max", type=_positive, default=4)
    e.set_defaults(func=run_equivalence)

    k = sub.add_parser("conjecture", parents=[common], help="torsion pattern of the unital m=2 operator")
    k.add_argument("--n-max", dest="n_max", type=_positive, default=None)
    k.add_argument("--stretch", action="store_true", help="allow degrees 7 and 8")
    k.set_defaults(func=run_conjecture)

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of a matrix file")
    s.add_argument("matrix")
    s.set_defaults(func=run_snf)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, OperatorSpecError, UnsupportedRingError, WallConditionError) as exc:
        _notice(f"error: {exc}")
        return EXIT_USAGE
    except (BrokenComplexError, ColoringError, HomotopyError, ArithmeticError) as exc:
        _notice(f"invariant breach: {exc}")
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
