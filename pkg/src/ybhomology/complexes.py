"""Chain complexes built from Yang-Baxter operators.

Four theories are provided:

``graphic``
    chains ``Z[X^n]``, boundary ``sum_i (-1)^i (d^l_i - d^r_i)`` where the
    face maps drag strand ``i`` to the left (``d^l``) or right (``d^r``) edge of
    the diagram through crossings labelled by ``R`` and then forget it.
``algebraic``
    the same chain groups, boundary read off the unique Yang-Baxter coloring
    of the ``n``-cube whose initial path carries the generator.
``one-term``
    ``C_n = M (x) V^n`` with a left wall, ``d = sum_i (-1)^i d_i``.
``two-term``
    ``C_n = M (x) V^n (x) N`` with two walls, ``d = sum_i (-1)^i (d^l_i - d^r_i)``.

Face indices are 1-based throughout.  Chain groups in degree 0 are ``Z``
(empty tuple) for the set-theoretic theories, ``M`` for one-term and
``M (x) N`` for two-term.  Basis labels are ordered lexicographically.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .homology import BrokenComplexError
from .matrix import RingMatrix
from .operators import LinearOp, SetTheoreticOp, WallMap, check_wall_condition
from .rings import ZZ, Ring

__all__ = [
    "ChainComplex",
    "CubeColoring",
    "ColoringError",
    "WallConditionError",
    "HomotopyError",
    "graphic_face",
    "graphic_face_matrix",
    "graphic_boundary",
    "graphic_complex",
    "cube_coloring",
    "face_label",
    "face_coloring",
    "algebraic_boundary",
    "algebraic_complex",
    "one_term_face",
    "one_term_boundary",
    "one_term_complex",
    "two_term_face",
    "two_term_boundary",
    "two_term_complex",
    "f_map",
    "homotopy_check",
    "presimplicial_failures",
    "precubical_failures",
    "set_precubical_failures",
]


class ColoringError(RuntimeError):
    """The 2-face saturation did not produce a consistent total coloring."""


class WallConditionError(ValueError):
    pass


class HomotopyError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# basis helpers


def _tuple_index(x, q):
    idx = 0
    for a in x:
        idx = idx * q + a
    return idx


def _radix_index(label, radices):
    idx = 0
    for a, r in zip(label, radices):
        idx = idx * r + a
    return idx


def _labels(radices):
    return list(product(*[range(r) for r in radices]))


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex given by boundary matrices ``d_n: C_n -> C_{n-1}``."""

    ring: Ring
    theory: str
    max_degree: int
    ranks: dict
    boundaries: dict
    radices: dict = field(default_factory=dict)
    description: str = ""

    def rank(self, n):
        return self.ranks[n]

    def boundary(self, n):
        if n == 0:
            return RingMatrix.zeros(self.ring, 0, self.ranks[0])
        if n not in self.boundaries:
            raise KeyError(f"boundary in degree {n} not built (max degree {self.max_degree})")
        return self.boundaries[n]

    def basis_labels(self, n):
        return _labels(self.radices[n])

    def verify(self):
        """Raise :class:`BrokenComplexError` unless every ``d_{n-1} d_n`` vanishes."""
        for n in range(2, self.max_degree + 1):
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero():
                raise BrokenComplexError(f"d_{n - 1} o d_{n} != 0 for {self.theory} complex {self.description}")
        return True

    def to_json_obj(self, label_limit=10_000):
        degrees = []
        for n in range(0, self.max_degree + 1):
            entry = {"n": n, "rank": self.ranks[n], "boundary": self.boundary(n).to_json_obj()}
            if self.ranks[n] <= label_limit:
                entry["basis"] = [list(lab) for lab in self.basis_labels(n)]
            degrees.append(entry)
        return {"ring": self.ring.code, "theory": self.theory, "operator": self.description, "degrees": degrees}

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_obj(), **kwargs)


def _map_degrees(fn, args_list, jobs):
    if jobs and jobs > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*args_list)))
    return [fn(*args) for args in args_list]


# ---------------------------------------------------------------------------
# graphic set-theoretic theory


def graphic_face(op: SetTheoreticOp, side, i, n, x):
    """Face map ``d^l_{i,n}`` (``side="left"``) or ``d^r_{i,n}`` on an ``n``-tuple."""
    if not 1 <= i <= n:
        raise IndexError(f"face index {i} outside 1..{n}")
    if len(x) != n:
        raise ValueError(f"expected an {n}-tuple, got {x!r}")
    T = op.table
    x = tuple(x)
    if side == "left":
        c = x[i - 1]
        outs = [None] * (i - 1)
        for j in range(i - 1, 0, -1):
            c, outs[j - 1] = T[x[j - 1]][c]
        return tuple(outs) + x[i:]
    if side == "right":
        c = x[i - 1]
        outs = []
        for j in range(i + 1, n + 1):
            o, c = T[c][x[j - 1]]
            outs.append(o)
        return x[: i - 1] + tuple(outs)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def graphic_face_matrix(op: SetTheoreticOp, side, i, n):
    q = op.size
    entries = {}
    for col, x in enumerate(product(range(q), repeat=n)):
        entries[(_tuple_index(graphic_face(op, side, i, n, x), q), col)] = 1
    return RingMatrix(ZZ, q ** (n - 1), q**n, entries)


def graphic_boundary(op: SetTheoreticOp, n):
    if n < 1:
        raise ValueError("boundary degree must be >= 1")
    q = op.size
    entries = {}
    for col, x in enumerate(product(range(q), repeat=n)):
        for i in range(1, n + 1):
            sign = -1 if i % 2 else 1
            for side, s in (("left", sign), ("right", -sign)):
                key = (_tuple_index(graphic_face(op, side, i, n, x), q), col)
                entries[key] = entries.get(key, 0) + s
    return RingMatrix(ZZ, q ** (n - 1), q**n, entries)


def _set_complex(builder, theory, op, n_max, jobs):
    q = op.size
    mats = _map_degrees(builder, [(op, n) for n in range(1, n_max + 1)], jobs)
    cx = ChainComplex(
        ZZ,
        theory,
        n_max,
        {n: q**n for n in range(n_max + 1)},
        {n: mats[n - 1] for n in range(1, n_max + 1)},
        {n: (q,) * n for n in range(n_max + 1)},
        op.name,
    )
    cx.verify()
    return cx


def graphic_complex(op: SetTheoreticOp, n_max, jobs=1):
    return _set_complex(graphic_boundary, "graphic", op, n_max, jobs)


# ---------------------------------------------------------------------------
# cube colorings

_I = 2  # marks the free coordinate of an edge


@dataclass(frozen=True)
class CubeColoring:
    """Coloring of the edges of the ``n``-cube.

    Edges are tuples over ``{0, 1, 2}`` with exactly one ``2`` marking the
    free coordinate.
    """

    n: int
    colors: dict

    def __getitem__(self, edge):
        return self.colors[tuple(edge)]

    @staticmethod
    def initial_path(n):
        return [(1,) * (k - 1) + (_I,) + (0,) * (n - k) for k in range(1, n + 1)]

    def two_faces(self):
        n = self.n
        for i in range(n):
            for j in range(i + 1, n):
                others = [k for k in range(n) if k not in (i, j)]
                for eps in product((0, 1), repeat=n - 2):
                    yield i, j, others, eps


def _edge(n, others, eps, assign):
    e = [0] * n
    for k, v in zip(others, eps):
        e[k] = v
    for k, v in assign.items():
        e[k] = v
    return tuple(e)


def cube_coloring(op: SetTheoreticOp, x) -> CubeColoring:
    """The unique Yang-Baxter coloring whose initial path carries ``x``.

    Saturates the local square rule over all 2-faces until nothing changes;
    a conflict or an uncolored edge raises :class:`ColoringError`.
    """
    n = len(x)
    T = op.table
    colors = {e: c for e, c in zip(CubeColoring.initial_path(n), x)}
    faces = []
    for i in range(n):
        for j in range(i + 1, n):
            others = [k for k in range(n) if k not in (i, j)]
            for eps in product((0, 1), repeat=n - 2):
                faces.append(
                    (
                        _edge(n, others, eps, {i: _I, j: 0}),  # bottom
                        _edge(n, others, eps, {i: 1, j: _I}),  # right
                        _edge(n, others, eps, {i: 0, j: _I}),  # left
                        _edge(n, others, eps, {i: _I, j: 1}),  # top
                    )
                )
    pending = faces
    while pending:
        rest = []
        for bottom, right, left, top in pending:
            if bottom in colors and right in colors:
                r1, r2 = T[colors[bottom]][colors[right]]
                for edge, val in ((left, r1), (top, r2)):
                    old = colors.get(edge)
                    if old is None:
                        colors[edge] = val
                    elif old != val:
                        raise ColoringError(f"inconsistent coloring at edge {edge}: {old} vs {val}")
            else:
                rest.append((bottom, right, left, top))
        if len(rest) == len(pending):
            break
        pending = rest
    expected = n * 2 ** (n - 1) if n else 0
    if len(colors) != expected:
        raise ColoringError(f"coloring saturated with {len(colors)} of {expected} edges colored")
    return CubeColoring(n, colors)


def face_label(coloring: CubeColoring, i, eps):
    """Tuple read along the induced initial path of the face ``x_i = eps``.

    ``i`` is 1-based; the remaining coordinates keep their order.
    """
    n = coloring.n
    if not 1 <= i <= n:
        raise IndexError(f"face index {i} outside 1..{n}")
    others = [k for k in range(n) if k != i - 1]
    out = []
    for t, k in enumerate(others):
        e = [0] * n
        for s in others[:t]:
            e[s] = 1
        e[k] = _I
        e[i - 1] = eps
        out.append(coloring.colors[tuple(e)])
    return tuple(out)


def face_coloring(coloring: CubeColoring, i, eps) -> CubeColoring:
    """Restriction of a coloring to the codimension-1 face ``x_i = eps``."""
    n = coloring.n
    out = {}
    for edge, c in coloring.colors.items():
        if edge[i - 1] == eps:
            out[edge[: i - 1] + edge[i:]] = c
    return CubeColoring(n - 1, out)


def algebraic_boundary(op: SetTheoreticOp, n):
    if n < 1:
        raise ValueError("boundary degree must be >= 1")
    q = op.size
    entries = {}
    for col, x in enumerate(product(range(q), repeat=n)):
        col_ = cube_coloring(op, x)
        for i in range(1, n + 1):
            for eps in (0, 1):
                sign = (-1) ** (n - i) * (1 - 2 * eps)
                key = (_tuple_index(face_label(col_, i, eps), q), col)
                entries[key] = entries.get(key, 0) + sign
    return RingMatrix(ZZ, q ** (n - 1), q**n, entries)


def algebraic_complex(op: SetTheoreticOp, n_max, jobs=1):
    return _set_complex(algebraic_boundary, "algebraic", op, n_max, jobs)


# ---------------------------------------------------------------------------
# linear theories


def _apply_r(vec, op: LinearOp, pos):
    """Apply ``R`` to the tensor factors at label positions ``pos, pos+1``."""
    out = {}
    for lab, c in vec.items():
        for (k, l), r in op.image(lab[pos], lab[pos + 1]):
            new = lab[:pos] + (k, l) + lab[pos + 2 :]
            x = c * r
            if new in out:
                s = out[new] + x
                if s:
                    out[new] = s
                else:
                    del out[new]
            else:
                out[new] = x
    return out


def _absorb_left(vec, action):
    out = {}
    for lab, c in vec.items():
        for mu, w in action.get((lab[0], lab[1]), ()):
            new = (mu,) + lab[2:]
            x = c * w
            out[new] = out[new] + x if new in out else x
    return {k: v for k, v in out.items() if v}


def _absorb_right(vec, action):
    out = {}
    for lab, c in vec.items():
        for nu, w in action.get((lab[-1], lab[-2]), ()):
            new = lab[:-2] + (nu,)
            x = c * w
            out[new] = out[new] + x if new in out else x
    return {k: v for k, v in out.items() if v}


def _left_face_vec(op, left_action, i, label, one):
    # strands occupy label positions 1..n
    vec = {label: one}
    for p in range(i - 1, 0, -1):
        vec = _apply_r(vec, op, p)
    return _absorb_left(vec, left_action)


def _right_face_vec(op, right_action, i, n, label, one):
    vec = {label: one}
    for p in range(i, n):
        vec = _apply_r(vec, op, p)
    return _absorb_right(vec, right_action)


def _check_left(op, wall):
    if wall.side != "left":
        raise WallConditionError("expected a left wall")
    if not check_wall_condition(op, wall):
        raise WallConditionError(f"left wall condition fails for {op.name}")


def _check_right(op, wall):
    if wall.side != "right":
        raise WallConditionError("expected a right wall")
    if not check_wall_condition(op, wall):
        raise WallConditionError(f"right wall condition fails for {op.name}")


def _vec_matrix(ring, radices_out, radices_in, columns):
    entries = {}
    for col, vec in enumerate(columns):
        for lab, c in vec.items():
            key = (_radix_index(lab, radices_out), col)
            entries[key] = entries[key] + c if key in entries else c
    rows = 1
    for r in radices_out:
        rows *= r
    cols = 1
    for r in radices_in:
        cols *= r
    return RingMatrix(ring, rows, cols, entries)


def one_term_face(op: LinearOp, wall: WallMap, i, n, check=True):
    """Matrix of ``d_{i,n}: M (x) V^n -> M (x) V^(n-1)``."""
    if not 1 <= i <= n:
        raise IndexError(f"face index {i} outside 1..{n}")
    if check:
        _check_left(op, wall)
    one = op.ring.one()
    act = wall.action()
    rin = (wall.module_rank,) + (op.m,) * n
    rout = (wall.module_rank,) + (op.m,) * (n - 1)
    cols = [_left_face_vec(op, act, i, lab, one) for lab in _labels(rin)]
    return _vec_matrix(op.ring, rout, rin, cols)


def one_term_boundary(op: LinearOp, wall: WallMap, n, check=True):
    if check:
        _check_left(op, wall)
    one = op.ring.one()
    act = wall.action()
    rin = (wall.module_rank,) + (op.m,) * n
    rout = (wall.module_rank,) + (op.m,) * (n - 1)
    cols = []
    for lab in _labels(rin):
        acc = {}
        for i in range(1, n + 1):
            neg = i % 2 == 1
            for k, c in _left_face_vec(op, act, i, lab, one).items():
                c = -c if neg else c
                acc[k] = acc[k] + c if k in acc else c
        cols.append(acc)
    return _vec_matrix(op.ring, rout, rin, cols)


def one_term_complex(op: LinearOp, wall: WallMap, n_max, jobs=1):
    _check_left(op, wall)
    mats = _map_degrees(one_term_boundary, [(op, wall, n, False) for n in range(1, n_max + 1)], jobs)
    cx = ChainComplex(
        op.ring,
        "one-term",
        n_max,
        {n: wall.module_rank * op.m**n for n in range(n_max + 1)},
        {n: mats[n - 1] for n in range(1, n_max + 1)},
        {n: (wall.module_rank,) + (op.m,) * n for n in range(n_max + 1)},
        op.name,
    )
    cx.verify()
    return cx


def two_term_face(op: LinearOp, walls, side, i, n, check=True):
    """Matrix of ``d^l_i`` or ``d^r_i`` on ``M (x) V^n (x) N``."""
    left, right = walls
    if not 1 <= i <= n:
        raise IndexError(f"face index {i} outside 1..{n}")
    if check:
        _check_left(op, left)
        _check_right(op, right)
    one = op.ring.one()
    rin = (left.module_rank,) + (op.m,) * n + (right.module_rank,)
    rout = (left.module_rank,) + (op.m,) * (n - 1) + (right.module_rank,)
    if side == "left":
        act = left.action()
        cols = [_left_face_vec(op, act, i, lab, one) for lab in _labels(rin)]
    elif side == "right":
        act = right.action()
        cols = [_right_face_vec(op, act, i, n, lab, one) for lab in _labels(rin)]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return _vec_matrix(op.ring, rout, rin, cols)


def two_term_boundary(op: LinearOp, walls, n, check=True):
    left, right = walls
    if check:
        _check_left(op, left)
        _check_right(op, right)
    one = op.ring.one()
    lact, ract = left.action(), right.action()
    rin = (left.module_rank,) + (op.m,) * n + (right.module_rank,)
    rout = (left.module_rank,) + (op.m,) * (n - 1) + (right.module_rank,)
    cols = []
    for lab in _labels(rin):
        acc = {}
        for i in range(1, n + 1):
            sign_neg = i % 2 == 1
            for vec, neg in (
                (_left_face_vec(op, lact, i, lab, one), sign_neg),
                (_right_face_vec(op, ract, i, n, lab, one), not sign_neg),
            ):
                for k, c in vec.items():
                    c = -c if neg else c
                    acc[k] = acc[k] + c if k in acc else c
        cols.append(acc)
    return _vec_matrix(op.ring, rout, rin, cols)


def two_term_complex(op: LinearOp, walls, n_max, jobs=1):
    left, right = walls
    _check_left(op, left)
    _check_right(op, right)
    mats = _map_degrees(two_term_boundary, [(op, walls, n, False) for n in range(1, n_max + 1)], jobs)
    cx = ChainComplex(
        op.ring,
        "two-term",
        n_max,
        {n: left.module_rank * op.m**n * right.module_rank for n in range(n_max + 1)},
        {n: mats[n - 1] for n in range(1, n_max + 1)},
        {n: (left.module_rank,) + (op.m,) * n + (right.module_rank,) for n in range(n_max + 1)},
        op.name,
    )
    cx.verify()
    return cx


# ---------------------------------------------------------------------------
# chain homotopy data


def f_map(op: LinearOp, wall: WallMap, n, v, check=True):
    """Matrix of ``a -> d_{n+1,n+1}(a (x) v_v)`` on ``C_n``."""
    if check:
        _check_left(op, wall)
    if not 0 <= v < op.m:
        raise IndexError(f"basis index {v} outside 0..{op.m - 1}")
    one = op.ring.one()
    act = wall.action()
    rad = (wall.module_rank,) + (op.m,) * n
    cols = [_left_face_vec(op, act, n + 1, lab + (v,), one) for lab in _labels(rad)]
    return _vec_matrix(op.ring, rad, rad, cols)


def _append_map(op, wall, n, v, sign):
    """``P_n``: ``a -> sign * a (x) v`` from ``C_n`` to ``C_{n+1}``."""
    rad = (wall.module_rank,) + (op.m,) * n
    radp = rad + (op.m,)
    c = op.ring.one() if sign > 0 else -op.ring.one()
    cols = [{lab + (v,): c} for lab in _labels(rad)]
    return _vec_matrix(op.ring, radp, rad, cols)


def _scalar_ratio(H: RingMatrix, F: RingMatrix, ring):
    """``c`` with ``H == c F`` (``c`` a ring element), or raise."""
    if F.is_zero():
        if H.is_zero():
            return None
        raise HomotopyError("homotopy identity is nonzero while f_n vanishes")
    key = min(F.entries)
    c, rem = ring.divmod(H[key], F.entries[key])
    if rem or H != F.scale(c):
        raise HomotopyError("dP + Pd is not a scalar multiple of f_n")
    return c


def homotopy_check(op: LinearOp, wall: WallMap, n_max, v):
    """Measure the constant ``c_n`` with ``d P_n + P_{n-1} d = c_n f_n``.

    ``P_n(a) = (-1)^n a (x) v``.  Also records whether the lower faces commute
    with appending ``v`` (``d_{i,n+1}(a (x) v) = d_{i,n}(a) (x) v`` for ``i <= n``).
    Returns a list of per-degree dictionaries.
    """
    _check_left(op, wall)
    ring = op.ring
    rows = []
    for n in range(0, n_max + 1):
        d_next = one_term_boundary(op, wall, n + 1, check=False)
        P_n = _append_map(op, wall, n, v, (-1) ** n)
        H = d_next @ P_n
        if n >= 1:
            P_prev = _append_map(op, wall, n - 1, v, (-1) ** (n - 1))
            H = H + P_prev @ one_term_boundary(op, wall, n, check=False)
        F = f_map(op, wall, n, v, check=False)
        c = _scalar_ratio(H, F, ring)
        cancels = True
        append = _append_map(op, wall, n - 1, v, 1) if n >= 1 else None
        app_n = _append_map(op, wall, n, v, 1)
        for i in range(1, n + 1):
            lhs = one_term_face(op, wall, i, n + 1, check=False) @ app_n
            rhs = append @ one_term_face(op, wall, i, n, check=False)
            if lhs != rhs:
                cancels = False
                break
        rows.append({"n": n, "c": c, "cancellation": cancels, "f": F})
    return rows


# ---------------------------------------------------------------------------
# face identities


def presimplicial_failures(op: LinearOp, wall: WallMap, n):
    """Pairs ``(i, j)`` with ``d_i d_j != d_{j-1} d_i`` on ``C_n`` (``i < j``)."""
    _check_left(op, wall)
    faces_n = {i: one_term_face(op, wall, i, n, check=False) for i in range(1, n + 1)}
    faces_m = {i: one_term_face(op, wall, i, n - 1, check=False) for i in range(1, n)}
    bad = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if faces_m[i] @ faces_n[j] != faces_m[j - 1] @ faces_n[i]:
                bad.append((i, j))
    return bad


def precubical_failures(op: LinearOp, walls, n):
    """Tuples ``(i, eps, j, delta)`` violating ``d_i^eps d_j^delta = d_{j-1}^delta d_i^eps``."""
    faces_n = {
        (i, s): two_term_face(op, walls, s, i, n, check=(i, s) == (1, "left"))
        for i in range(1, n + 1)
        for s in ("left", "right")
    }
    faces_m = {(i, s): two_term_face(op, walls, s, i, n - 1, check=False) for i in range(1, n) for s in ("left", "right")}
    bad = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            for e in ("left", "right"):
                for d in ("left", "right"):
                    if faces_m[(i, e)] @ faces_n[(j, d)] != faces_m[(j - 1, d)] @ faces_n[(i, e)]:
                        bad.append((i, e, j, d))
    return bad


def set_precubical_failures(op: SetTheoreticOp, n):
    """Pre-cubical identities for the graphic face maps, checked on every tuple."""
    bad = set()
    for x in product(range(op.size), repeat=n):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                for e in ("left", "right"):
                    for d in ("left", "right"):
                        lhs = graphic_face(op, e, i, n - 1, graphic_face(op, d, j, n, x))
                        rhs = graphic_face(op, d, j - 1, n - 1, graphic_face(op, e, i, n, x))
                        if lhs != rhs:
                            bad.add((i, e, j, d))
    return sorted(bad)
