"""Homology tables and the verification reports built on top of them."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complexes import (
    ChainComplex,
    algebraic_boundary,
    algebraic_complex,
    f_map,
    graphic_boundary,
    graphic_complex,
    one_term_complex,
    two_term_complex,
)
from .homology import HomologyGroup, homology_from_boundaries
from .matrix import RingMatrix
from .operators import LinearOp, SetTheoreticOp, WallMap, build_example_4_9
from .rings import QY, UnsupportedRingError
from .snf import determinant

__all__ = [
    "HomologyTable",
    "homology_table",
    "EquivalenceReport",
    "equivalence_verdict",
    "TrivialityCertificate",
    "triviality_certificate",
    "ConjectureReport",
    "conjecture_check",
    "fibonacci",
    "fib_partial_sum",
    "recurrence_a_values",
    "is_unit_determinant",
    "DESK_MAX_DEGREE",
    "STRETCH_MAX_DEGREE",
]

DESK_MAX_DEGREE = 6
STRETCH_MAX_DEGREE = 8


@dataclass
class HomologyTable:
    theory: str
    operator: str
    ring: object
    rows: dict = field(default_factory=dict)

    def __getitem__(self, n):
        return self.rows[n]

    def degrees(self):
        return sorted(self.rows)

    def to_json_obj(self):
        return {
            "theory": self.theory,
            "operator": self.operator,
            "ring": self.ring.code,
            "rows": [{"n": n, **self.rows[n].to_json_obj()} for n in self.degrees()],
        }

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "free_rank", "torsion"])
        for n in self.degrees():
            h = self.rows[n]
            w.writerow([n, h.free_rank, ";".join(self.ring.format(t) for t in h.torsion)])
        return buf.getvalue()

    def same_groups(self, other):
        return self.degrees() == other.degrees() and all(self.rows[n] == other.rows[n] for n in self.degrees())


def _homology_at(d_n, d_n1, method):
    return homology_from_boundaries(d_n, d_n1, method=method)


def homology_table(complex: ChainComplex, n_lo=0, n_hi=None, *, jobs=1, method="kernel") -> HomologyTable:
    """Homology in degrees ``n_lo..n_hi``; the complex must reach degree ``n_hi + 1``."""
    if n_hi is None:
        n_hi = complex.max_degree - 1
    if n_hi + 1 > complex.max_degree:
        raise ValueError(f"need boundaries through degree {n_hi + 1}, complex stops at {complex.max_degree}")
    if not complex.ring.euclidean:
        raise UnsupportedRingError(f"homology needs a Euclidean ring, not {complex.ring.code}")
    degrees = list(range(n_lo, n_hi + 1))
    args = [(complex.boundary(n), complex.boundary(n + 1), method) for n in degrees]
    if jobs and jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_homology_at, *zip(*args)))
    else:
        groups = [_homology_at(*a) for a in args]
    return HomologyTable(complex.theory, complex.description, complex.ring, dict(zip(degrees, groups)))


# ---------------------------------------------------------------------------
# equivalence of the algebraic and graphic boundaries


@dataclass
class EquivalenceReport:
    operator: str
    n_max: int
    matrix_match: dict
    graphic: HomologyTable
    algebraic: HomologyTable

    @property
    def tables_agree(self):
        return self.graphic.same_groups(self.algebraic)

    @property
    def passed(self):
        return all(self.matrix_match.values()) and self.tables_agree

    def to_json_obj(self):
        return {
            "operator": self.operator,
            "n_max": self.n_max,
            "sign_rule": "algebraic_n = (-1)^(n+1) * graphic_n",
            "matrix_match": {str(n): ok for n, ok in sorted(self.matrix_match.items())},
            "tables_agree": self.tables_agree,
            "passed": self.passed,
            "graphic": self.graphic.to_json_obj(),
            "algebraic": self.algebraic.to_json_obj(),
        }


def equivalence_verdict(op: SetTheoreticOp, n_max, *, jobs=1, method="kernel") -> EquivalenceReport:
    """Compare both boundaries for ``n <= n_max`` and both homology tables for ``n < n_max``."""
    graphic = graphic_complex(op, n_max, jobs=jobs)
    algebraic = algebraic_complex(op, n_max, jobs=jobs)
    match = {}
    for n in range(1, n_max + 1):
        sign = 1 if n % 2 else -1
        match[n] = algebraic.boundary(n) == graphic.boundary(n).scale(sign)
    gt = homology_table(graphic, 0, n_max - 1, jobs=jobs, method=method)
    at = homology_table(algebraic, 0, n_max - 1, jobs=jobs, method=method)
    return EquivalenceReport(op.name, n_max, match, gt, at)


# ---------------------------------------------------------------------------
# one-term triviality


def is_unit_determinant(M: RingMatrix) -> bool:
    """Whether a square matrix is invertible over its ring."""
    ring = M.ring
    if M.rows != M.cols:
        return False
    cols = M.column_dicts()
    if all(len(c) == 1 for c in cols):
        hit = set()
        for c in cols:
            (i, v), = c.items()
            if i in hit or not ring.is_unit(v):
                break
            hit.add(i)
        else:
            return True
    det = determinant(M)
    return bool(det) and ring.is_unit(det)


@dataclass
class TrivialityCertificate:
    operator: str
    n_max: int
    vector: int | None
    invertible: dict
    direct: HomologyTable | None

    @property
    def found(self):
        return self.vector is not None

    @property
    def consistent(self):
        if not self.found or self.direct is None:
            return True
        return all(h.is_zero() for h in self.direct.rows.values())

    def to_json_obj(self):
        return {
            "operator": self.operator,
            "n_max": self.n_max,
            "certificate": self.found,
            "vector": None if self.vector is None else self.vector + 1,
            "invertible": {str(v + 1): flags for v, flags in self.invertible.items()},
            "direct": None if self.direct is None else self.direct.to_json_obj(),
            "consistent": self.consistent,
        }


def triviality_certificate(op: LinearOp, wall: WallMap, n_max, *, direct_max=3, method="kernel"):
    """Search for a basis vector making every ``f_n`` (``n <= n_max``) invertible.

    Independently computes the one-term homology for ``n <= min(n_max, direct_max)``.
    """
    invertible = {}
    vector = None
    for v in range(op.m):
        flags = []
        for n in range(0, n_max + 1):
            ok = is_unit_determinant(f_map(op, wall, n, v))
            flags.append(ok)
            if not ok:
                break
        invertible[v] = flags
        if vector is None and len(flags) == n_max + 1 and all(flags):
            vector = v
    direct = None
    top = min(n_max, direct_max)
    if top >= 0:
        cx = one_term_complex(op, wall, top + 1)
        direct = homology_table(cx, 0, top, method=method)
    return TrivialityCertificate(op.name, n_max, vector, invertible, direct)


# ---------------------------------------------------------------------------
# torsion pattern of the unital m = 2 family


def fibonacci(k):
    """``f_k`` with ``f_1 = f_2 = 1`` (and ``f_0 = 0``)."""
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fib_partial_sum(n, convention="zero"):
    """``s_n = f_1 + ... + f_{n+1}``.

    For ``n <= 0`` the ``"zero"`` convention returns 0; ``"natural"`` extends
    ``s_n = f_{n+3} - 1`` down to ``n = -1`` (so ``s_0 = 1``).
    """
    if n >= 1:
        return sum(fibonacci(i) for i in range(1, n + 2))
    if convention == "zero":
        return 0
    if convention == "natural":
        return fibonacci(n + 3) - 1 if n >= -1 else 0
    raise ValueError(f"unknown convention {convention!r}")


def recurrence_a_values(n_max, convention="zero"):
    """``a_1..a_{n_max}`` solved from ``2^n = 2 + a_{n-1} + s_{n-2} + a_n + s_{n-1}``, ``a_1 = 0``."""
    a = {1: 0}
    for n in range(2, n_max + 1):
        s = lambda k: fib_partial_sum(k, convention)  # noqa: E731
        a[n] = 2**n - 2 - a[n - 1] - s(n - 2) - s(n - 1)
    return [a[n] for n in range(1, n_max + 1)]


@dataclass
class ConjectureReport:
    n_max: int
    table: HomologyTable
    free_ranks: dict
    mult_y2: dict
    mult_y4: dict
    other_torsion: dict
    a_expected: list
    recurrence_residual: dict
    shifted_residual: dict
    s_expected: dict
    convention: str = "s_k=0 for k<=0"

    @property
    def a(self):
        return [self.mult_y2[n] for n in sorted(self.mult_y2)]

    @property
    def s(self):
        """Computed ``s_{n-2}`` (multiplicity of ``y^4 - 1`` in ``H_n``), keyed by ``n - 2``."""
        return {n - 2: self.mult_y4[n] for n in sorted(self.mult_y4)}

    @property
    def free_rank_ok(self):
        return all(r == 2 for r in self.free_ranks.values())

    @property
    def torsion_shape_ok(self):
        return not any(self.other_torsion.values())

    @property
    def recurrence_ok(self):
        return all(r == 0 for r in self.recurrence_residual.values())

    @property
    def a_ok(self):
        return self.a == self.a_expected[: len(self.a)]

    @property
    def s_ok(self):
        return all(self.s[k] == v for k, v in self.s_expected.items() if k in self.s)

    @property
    def fibonacci_ok(self):
        """``s_n - s_{n-1} = f_{n+1}`` (n >= 2) and ``s_n = f_{n+3} - 1`` (n >= 1) over the reported range."""
        top = max(self.n_max, 3)
        diffs = all(fib_partial_sum(n) - fib_partial_sum(n - 1) == fibonacci(n + 1) for n in range(2, top + 1))
        closed = all(fib_partial_sum(n) == fibonacci(n + 3) - 1 for n in range(1, top + 1))
        return diffs and closed

    @property
    def passed(self):
        return self.free_rank_ok and self.torsion_shape_ok and self.recurrence_ok and self.a_ok and self.s_ok

    def failures(self):
        out = []
        for n in sorted(self.free_ranks):
            if self.free_ranks[n] != 2:
                out.append(f"H_{n}: free rank {self.free_ranks[n]} != 2")
            if self.other_torsion[n]:
                out.append(f"H_{n}: unexpected torsion {self.other_torsion[n]}")
        for n, r in sorted(self.recurrence_residual.items()):
            if r:
                out.append(f"recurrence at n={n} off by {r}")
        for n, (got, want) in enumerate(zip(self.a, self.a_expected), start=1):
            if got != want:
                out.append(f"a_{n}: computed {got}, recurrence gives {want}")
        for k, want in sorted(self.s_expected.items()):
            if k in self.s and self.s[k] != want:
                out.append(f"s_{k}: computed {self.s[k]}, Fibonacci partial sum gives {want}")
        return out

    def to_json_obj(self):
        return {
            "theory": "two-term",
            "operator": self.table.operator,
            "rows": self.table.to_json_obj()["rows"],
            "conjecture": {
                "a": self.a,
                "a_expected": self.a_expected[: len(self.a)],
                "s": [self.s[k] for k in sorted(self.s)],
                "s_index": sorted(self.s),
                "s_expected": {str(k): v for k, v in sorted(self.s_expected.items())},
                "recurrence_residual": {str(n): r for n, r in sorted(self.recurrence_residual.items())},
                "shifted_residual": {str(n): r for n, r in sorted(self.shifted_residual.items())},
                "free_rank_ok": self.free_rank_ok,
                "torsion_shape_ok": self.torsion_shape_ok,
                "recurrence_ok": self.recurrence_ok,
                "a_ok": self.a_ok,
                "s_ok": self.s_ok,
                "fibonacci_ok": self.fibonacci_ok,
                "passed": self.passed,
                "failures": self.failures(),
                "convention": self.convention,
            },
        }


def conjecture_check(n_max, *, stretch=False, jobs=1, method="kernel") -> ConjectureReport:
    """Two-term homology of the ``m = 2`` unital operator with trivial walls, degrees ``1..n_max``.

    The residual of the printed recurrence is evaluated wherever every index
    is at least 1 and every term has been computed.  ``shifted_residual``
    records ``2^n - 2 - t_{n-1} - t_n`` with ``t_n`` the torsion count of
    ``H_n``, which must vanish whenever all invariant factors are nonunits.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    limit = STRETCH_MAX_DEGREE if stretch else DESK_MAX_DEGREE
    if n_max > limit:
        raise ValueError(f"n_max={n_max} exceeds {limit}; use stretch mode for degrees up to {STRETCH_MAX_DEGREE}")
    op = build_example_4_9(2)
    walls = (WallMap.trivial_wall("left", 2, QY), WallMap.trivial_wall("right", 2, QY))
    cx = two_term_complex(op, walls, n_max + 1, jobs=jobs)
    table = homology_table(cx, 1, n_max, jobs=jobs, method=method)
    y = QY.gen()
    t2 = QY.canonical_associate(1 - y**2)
    t4 = QY.canonical_associate(1 - y**4)
    free, m2, m4, other = {}, {}, {}, {}
    for n in table.degrees():
        h = table[n]
        free[n] = h.free_rank
        m2[n] = sum(1 for t in h.torsion if t == t2)
        m4[n] = sum(1 for t in h.torsion if t == t4)
        other[n] = [str(t) for t in h.torsion if t != t2 and t != t4]

    def s_comp(k):
        return m4.get(k + 2)

    residual = {}
    shifted = {}
    for n in range(2, n_max + 1):
        tn, tp = m2[n] + m4[n], m2[n - 1] + m4[n - 1]
        shifted[n] = 2**n - 2 - tp - tn
        if n - 2 < 1:
            continue
        terms = (m2[n - 1], s_comp(n - 2), m2[n], s_comp(n - 1))
        if any(t is None for t in terms):
            continue
        residual[n] = 2**n - 2 - sum(terms)
    s_expected = {k: fib_partial_sum(k) for k in range(1, n_max - 1)}
    return ConjectureReport(
        n_max,
        table,
        free,
        m2,
        m4,
        other,
        recurrence_a_values(n_max),
        residual,
        shifted,
        s_expected,
    )
