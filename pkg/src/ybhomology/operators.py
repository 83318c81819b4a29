"""Set-theoretic and linear (pre-)Yang-Baxter operators, wall maps and builders.

Conventions
-----------
Set-theoretic operators act on ``X = {0, ..., size-1}``; ``table[a][b]`` is
the pair ``(R1(a, b), R2(a, b))``.

A linear operator on ``V = k{v_1, ..., v_m}`` is stored with 0-based basis
indices.  As an ``m^2 x m^2`` matrix, the column index is the input pair
``(i, j)`` and the row index the output pair ``(k, l)``, both ordered
lexicographically (``i*m + j``).  With this convention the ``m = 2`` member of
the unital family is the matrix::

    [[1,      0, 0, 0],
     [0, 1-y^2,  1, 0],
     [0,   y^2,  0, 0],
     [0,      0, 0, 1]]

JSON files use 1-based indices for linear entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .laurent import LaurentPoly
from .matrix import RingMatrix
from .rings import QQ, QQ_Q, QY, ZZ, FractionField, LaurentRing, RationalFunction, Ring, ring_from_code
from .snf import determinant

__all__ = [
    "SetTheoreticOp",
    "LinearOp",
    "WallMap",
    "TrivialWall",
    "OperatorSpecError",
    "check_yb_set",
    "check_yb_linear",
    "is_invertible",
    "column_unital",
    "check_wall_condition",
    "birack_right_invertibility",
    "build_example_4_9",
    "build_sl2",
    "normalize_columns",
    "substitute_y_squared",
    "build_alexander_birack",
    "dihedral_quandle_birack",
    "transposition",
    "identity",
    "set_op_from_function",
    "linearize",
    "kron",
    "load_operator",
    "operator_from_json_obj",
    "operator_to_json_obj",
]


class OperatorSpecError(ValueError):
    """Malformed operator description or violated builder precondition."""


@dataclass(frozen=True)
class SetTheoreticOp:
    size: int
    table: tuple
    name: str = "custom"

    def __post_init__(self):
        if len(self.table) != self.size or any(len(row) != self.size for row in self.table):
            raise OperatorSpecError("table must be size x size")
        for row in self.table:
            for pair in row:
                if len(pair) != 2 or not all(0 <= x < self.size for x in pair):
                    raise OperatorSpecError(f"table output {pair!r} out of range")

    def __call__(self, a, b):
        return self.table[a][b]

    def r1(self, a, b):
        return self.table[a][b][0]

    def r2(self, a, b):
        return self.table[a][b][1]

    def is_bijective(self):
        images = {self.table[a][b] for a in range(self.size) for b in range(self.size)}
        return len(images) == self.size * self.size


def set_op_from_function(size, fn, name="custom"):
    table = tuple(tuple(tuple(int(x) % size for x in fn(a, b)) for b in range(size)) for a in range(size))
    return SetTheoreticOp(size, table, name)


class LinearOp:
    """Linear map ``R: V (x) V -> V (x) V`` given by its coefficient tensor."""

    __slots__ = ("m", "ring", "images", "name")

    def __init__(self, m, ring: Ring, coeffs, name="custom"):
        if m < 1:
            raise OperatorSpecError("basis size must be positive")
        self.m = m
        self.ring = ring
        self.name = name
        images = {}
        for (i, j), outs in coeffs.items():
            if not (0 <= i < m and 0 <= j < m):
                raise OperatorSpecError(f"input pair {(i, j)} out of range")
            clean = {}
            for (k, l), c in dict(outs).items():
                if not (0 <= k < m and 0 <= l < m):
                    raise OperatorSpecError(f"output pair {(k, l)} out of range")
                c = ring.coerce(c)
                if c:
                    clean[(k, l)] = clean[(k, l)] + c if (k, l) in clean else c
            clean = {kl: c for kl, c in clean.items() if c}
            if clean:
                images[(i, j)] = tuple(sorted(clean.items()))
        self.images = images

    def image(self, i, j):
        """``R(v_i (x) v_j)`` as a tuple of ``((k, l), coeff)``."""
        return self.images.get((i, j), ())

    def coeff(self, i, j, k, l):
        for kl, c in self.image(i, j):
            if kl == (k, l):
                return c
        return self.ring.zero()

    def matrix(self) -> RingMatrix:
        m = self.m
        entries = {}
        for (i, j), outs in self.images.items():
            for (k, l), c in outs:
                entries[(k * m + l, i * m + j)] = c
        return RingMatrix(self.ring, m * m, m * m, entries)

    @classmethod
    def from_matrix(cls, M: RingMatrix, m, name="custom"):
        if M.shape != (m * m, m * m):
            raise OperatorSpecError("matrix must be m^2 x m^2")
        coeffs = {}
        for (row, col), c in M.entries.items():
            coeffs.setdefault(divmod(col, m), {})[divmod(row, m)] = c
        return cls(m, M.ring, coeffs, name)

    def __eq__(self, other):
        if not isinstance(other, LinearOp):
            return NotImplemented
        return self.m == other.m and self.matrix() == other.matrix()

    __hash__ = None

    def __repr__(self):
        return f"LinearOp({self.name!r}, m={self.m}, ring={self.ring.code})"


@dataclass(frozen=True, eq=False)
class WallMap:
    """Wall ``M (x) V -> M`` (left) or ``V (x) N -> N`` (right).

    For the left wall the column index of ``matrix`` is ``mu*m + i``; for the
    right wall it is ``i*module_rank + nu``.
    """

    side: str
    module_rank: int
    m: int
    matrix: RingMatrix
    trivial: bool = False

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise OperatorSpecError("wall side must be 'left' or 'right'")
        if self.matrix.shape != (self.module_rank, self.module_rank * self.m):
            raise OperatorSpecError(
                f"wall matrix shape {self.matrix.shape} does not fit module rank {self.module_rank} and m={self.m}"
            )

    @classmethod
    def trivial_wall(cls, side, m, ring):
        """Rank-one wall acting on ``V`` by the counit ``v_i -> 1``."""
        one = ring.one()
        return cls(side, 1, m, RingMatrix(ring, 1, m, {(0, i): one for i in range(m)}), trivial=True)

    def action(self):
        """``{(module_index, basis_index): ((module_index', coeff), ...)}``."""
        out = {}
        for (row, col), c in self.matrix.entries.items():
            if self.side == "left":
                key = divmod(col, self.m)
            else:
                i, nu = divmod(col, self.module_rank)
                key = (nu, i)
            out.setdefault(key, []).append((row, c))
        return {k: tuple(v) for k, v in out.items()}


def TrivialWall(side, m, ring):
    return WallMap.trivial_wall(side, m, ring)


# ---------------------------------------------------------------------------
# checks


def check_yb_set(op: SetTheoreticOp) -> bool:
    """Exhaustive check of the set-theoretic braid relation on ``X^3``."""
    T = op.table
    for a, b, c in product(range(op.size), repeat=3):
        # (R x 1)(1 x R)(R x 1)
        x1, x2 = T[a][b]
        x2, x3 = T[x2][c]
        l1, l2 = T[x1][x2]
        lhs = (l1, l2, x3)
        # (1 x R)(R x 1)(1 x R)
        y2, y3 = T[b][c]
        y1, y2 = T[a][y2]
        r2, r3 = T[y2][y3]
        if lhs != (y1, r2, r3):
            return False
    return True


def kron(A: RingMatrix, B: RingMatrix) -> RingMatrix:
    entries = {}
    for (i, j), a in A.entries.items():
        for (k, l), b in B.entries.items():
            entries[(i * B.rows + k, j * B.cols + l)] = a * b
    return RingMatrix(A.ring, A.rows * B.rows, A.cols * B.cols, entries)


def check_yb_linear(op: LinearOp) -> bool:
    R = op.matrix()
    I = RingMatrix.identity(op.ring, op.m)
    R1 = kron(R, I)
    R2 = kron(I, R)
    return R1 @ R2 @ R1 == R2 @ R1 @ R2


def is_invertible(op: LinearOp) -> bool:
    ring = op.ring
    if isinstance(ring, FractionField):
        return bool(determinant(op.matrix()))
    if not ring.euclidean:
        raise OperatorSpecError(f"invertibility undecidable over {ring.code}")
    det = determinant(op.matrix())
    return bool(det) and ring.is_unit(det)


def column_unital(op: LinearOp) -> bool:
    one = op.ring.one()
    return all(s == one for s in op.matrix().column_sums())


def check_wall_condition(op: LinearOp, wall: WallMap) -> bool:
    if wall.m != op.m:
        raise OperatorSpecError(f"wall built for m={wall.m}, operator has m={op.m}")
    if wall.matrix.ring != op.ring:
        raise OperatorSpecError("wall and operator rings differ")
    R = op.matrix()
    W = wall.matrix
    Im = RingMatrix.identity(op.ring, op.m)
    Imod = RingMatrix.identity(op.ring, wall.module_rank)
    if wall.side == "left":
        absorb_twice = W @ kron(W, Im)
        return absorb_twice == absorb_twice @ kron(Imod, R)
    absorb_twice = W @ kron(Im, W)
    return absorb_twice == absorb_twice @ kron(R, Imod)


def birack_right_invertibility(op: SetTheoreticOp) -> bool:
    """For every ``B`` the map ``A -> R2(A, B)`` is a bijection of ``X``."""
    n = op.size
    return all(len({op.table[a][b][1] for a in range(n)}) == n for b in range(n))


# ---------------------------------------------------------------------------
# builders


def build_example_4_9(m: int) -> LinearOp:
    """Column-unital operator family over ``Q[y, 1/y]``.

    With 1-based indices: coefficient 1 when ``i=j=k=l``; 1 when ``l=i>j=k``;
    ``y^2`` when ``l=i<j=k``; ``1-y^2`` when ``k=i<j=l``; 0 otherwise.
    """
    if m < 1:
        raise OperatorSpecError("m must be positive")
    y = QY.gen()
    one = QY.one()
    coeffs = {}
    for i in range(m):
        for j in range(m):
            if i == j:
                coeffs[(i, j)] = {(i, i): one}
            elif i > j:
                coeffs[(i, j)] = {(j, i): one}
            else:
                coeffs[(i, j)] = {(j, i): y**2, (i, j): 1 - y**2}
    return LinearOp(m, QY, coeffs, name=f"example49(m={m})")


def build_sl2() -> LinearOp:
    """The un-normalized ``m = 2`` operator over ``Q[q, 1/q]``."""
    q = QQ_Q.gen()
    M = RingMatrix.from_dense(
        QQ_Q,
        [
            [-q, 0, 0, 0],
            [0, q**-1 - q, 1, 0],
            [0, 1, 0, 0],
            [0, 0, 0, -q],
        ],
    )
    return LinearOp.from_matrix(M, 2, name="sl2")


def normalize_columns(op: LinearOp) -> LinearOp:
    """Divide every column by its sum, working in the fraction field."""
    ring = op.ring
    if isinstance(ring, LaurentRing):
        target = FractionField(ring)
        lift = RationalFunction
    elif ring == ZZ:
        target, lift = QQ, Fraction
    else:
        target, lift = ring, (lambda x: x)
    M = op.matrix()
    sums = M.column_sums()
    for col, s in enumerate(sums):
        if not s:
            i, j = divmod(col, op.m)
            raise ZeroDivisionError(f"column ({i + 1},{j + 1}) sums to zero")
    entries = {(r, c): lift(v) / lift(sums[c]) for (r, c), v in M.entries.items()}
    return LinearOp.from_matrix(RingMatrix(target, M.rows, M.cols, entries), op.m, name=f"normalized({op.name})")


def substitute_y_squared(p: LaurentPoly, t):
    """Replace ``y^2`` by ``t`` in a Laurent polynomial with only even exponents."""
    total = None
    for e, c in p.terms().items():
        if e % 2:
            raise ValueError(f"{p} has an odd power of {p.var}")
        term = c * t ** (e // 2)
        total = term if total is None else total + term
    if total is None:
        return 0 * t
    return total


def build_alexander_birack(p: int, s: int, t: int) -> SetTheoreticOp:
    """``R(x, y) = ((1-s)x + t y, s x + (1-t) y)`` over ``Z/p``."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise OperatorSpecError(f"p must be prime, got {p}")
    if s % p == 0 or t % p == 0:
        raise OperatorSpecError("s and t must be units mod p")
    if ((1 - s) * (1 - t)) % p:
        raise OperatorSpecError(f"(1-s)(1-t) = {((1 - s) * (1 - t)) % p} != 0 mod {p}")
    return set_op_from_function(
        p, lambda x, y: ((1 - s) * x + t * y, s * x + (1 - t) * y), name=f"alexander(p={p},s={s},t={t})"
    )


def dihedral_quandle_birack(q: int) -> SetTheoreticOp:
    """Rack operator ``R(a, b) = (b, a*b)`` for the dihedral quandle ``a*b = 2b - a``."""
    return set_op_from_function(q, lambda a, b: (b, 2 * b - a), name=f"dihedral(q={q})")


def transposition(q: int) -> SetTheoreticOp:
    return set_op_from_function(q, lambda a, b: (b, a), name=f"transposition(q={q})")


def identity(q: int) -> SetTheoreticOp:
    return set_op_from_function(q, lambda a, b: (a, b), name=f"identity(q={q})")


def linearize(op: SetTheoreticOp, ring: Ring = ZZ) -> LinearOp:
    one = ring.one()
    coeffs = {(a, b): {op.table[a][b]: one} for a in range(op.size) for b in range(op.size)}
    return LinearOp(op.size, ring, coeffs, name=op.name)


# ---------------------------------------------------------------------------
# JSON operator specs

_BUILTINS = {
    "example49": lambda p: build_example_4_9(int(p.get("m", 2))),
    "sl2": lambda p: build_sl2(),
    "dihedral": lambda p: dihedral_quandle_birack(int(p.get("q", 3))),
    "alexander": lambda p: build_alexander_birack(int(p["p"]), int(p["s"]), int(p["t"])),
    "transposition": lambda p: transposition(int(p.get("q", 2))),
    "identity": lambda p: identity(int(p.get("q", 2))),
}


def operator_from_json_obj(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise OperatorSpecError("operator spec must be an object with a 'kind'")
    kind = obj["kind"]
    try:
        if kind == "set":
            size = int(obj["size"])
            table = tuple(tuple(tuple(int(x) for x in pair) for pair in row) for row in obj["table"])
            return SetTheoreticOp(size, table, obj.get("name", "custom"))
        if kind == "linear":
            ring = ring_from_code(obj.get("ring", "Z"))
            m = int(obj["m"])
            coeffs = {}
            for e in obj["entries"]:
                i, j = (int(x) - 1 for x in e["in"])
                k, l = (int(x) - 1 for x in e["out"])
                c = ring.parse(e["coeff"])
                bucket = coeffs.setdefault((i, j), {})
                bucket[(k, l)] = bucket[(k, l)] + c if (k, l) in bucket else c
            return LinearOp(m, ring, coeffs, obj.get("name", "custom"))
        if kind == "builtin":
            name = obj["name"]
            if name not in _BUILTINS:
                raise OperatorSpecError(f"unknown builtin operator {name!r}")
            return _BUILTINS[name](obj.get("params", {}) or {})
    except OperatorSpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise OperatorSpecError(f"malformed {kind} operator spec: {exc}") from None
    raise OperatorSpecError(f"unknown operator kind {kind!r}")


def operator_to_json_obj(op):
    if isinstance(op, SetTheoreticOp):
        return {"kind": "set", "size": op.size, "table": [[list(p) for p in row] for row in op.table], "name": op.name}
    entries = []
    for (i, j), outs in sorted(op.images.items()):
        for (k, l), c in outs:
            entries.append({"in": [i + 1, j + 1], "out": [k + 1, l + 1], "coeff": op.ring.format(c)})
    return {"kind": "linear", "ring": op.ring.code, "m": op.m, "entries": entries, "name": op.name}


def load_operator(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise OperatorSpecError(f"{path}: not valid JSON ({exc})") from None
    return operator_from_json_obj(obj)
