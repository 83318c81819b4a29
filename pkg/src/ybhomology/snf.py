"""Smith normal form over Euclidean rings, with fraction-free oracles.

:func:`smith_normal_form` returns ``A = U * D * V`` with ``U`` and ``V``
unimodular and ``D`` diagonal with a divisibility chain.  The elimination
works on sparse rows and never swaps physically; pivot positions are recorded
and folded into ``U`` and ``V`` at the end.

Pivot rule: the nonzero entry of minimal Euclidean norm, ties broken by
smallest row index and then smallest column index (original indices).
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import RingMatrix
from .rings import Ring, UnsupportedRingError

__all__ = ["SNFResult", "smith_normal_form", "fraction_free_rank", "determinant", "invariant_factors"]


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors of a matrix together with the transforms.

    ``d`` holds the nonzero diagonal entries (canonical associates) in
    divisibility order; ``u`` and ``v`` satisfy ``A == u @ D @ v`` and are
    ``None`` when tracking was switched off.
    """

    ring: Ring
    shape: tuple
    d: tuple
    u: RingMatrix | None = None
    v: RingMatrix | None = None

    @property
    def rank(self):
        return len(self.d)

    def diagonal(self):
        return RingMatrix(self.ring, self.shape[0], self.shape[1], {(k, k): x for k, x in enumerate(self.d)})

    def nonunit_factors(self):
        return tuple(x for x in self.d if not self.ring.is_unit(x))

    # spec-facing aliases
    @property
    def u_inv_applied(self):
        return self.u

    @property
    def v_inv_applied(self):
        return self.v


def _axpy(target, src, q):
    """``target -= q * src`` on sparse dict rows."""
    get = target.get
    for k, v in src.items():
        t = get(k)
        if t is None:
            target[k] = -(q * v)
        else:
            x = t - q * v
            if x:
                target[k] = x
            else:
                del target[k]


def _scale(target, u):
    for k in target:
        target[k] = u * target[k]


def _lin(a, b, x, y):
    if a is None:
        return y * b
    if b is None:
        return x * a
    return x * a + y * b


def _put(row, k, v):
    if v:
        row[k] = v
    else:
        row.pop(k, None)


def _combine(a, b, x, y):
    """Sparse ``x*a + y*b``."""
    out = {}
    for k in a.keys() | b.keys():
        v = _lin(a.get(k), b.get(k), x, y)
        if v:
            out[k] = v
    return out


def smith_normal_form(A: RingMatrix, *, track_u=True, track_v=True) -> SNFResult:
    """Smith normal form of ``A`` over its (Euclidean) ring."""
    ring = A.ring
    if not ring.euclidean:
        raise UnsupportedRingError(f"Smith normal form needs a Euclidean ring, not {ring.code}")
    R, C = A.shape
    one = ring.one()
    norm = ring.norm
    divmod_ = ring.divmod

    rows = A.row_dicts()
    # U' is stored by columns, V' by rows; both start as identities
    ucols = [{i: one} for i in range(R)] if track_u else None
    vrows = [{j: one} for j in range(C)] if track_v else None
    alive = list(range(R))
    pivots = []

    def row_axpy(i, q, r):
        # row_i -= q row_r
        _axpy(rows[i], rows[r], q)
        if ucols is not None:
            _axpy(ucols[r], ucols[i], -q)

    def col_axpy(j, q, c, holders):
        # col_j -= q col_c; only rows holding column c change
        for i in holders:
            a = rows[i].get(c)
            if a:
                row = rows[i]
                x = row.get(j)
                x = -(q * a) if x is None else x - q * a
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
        if vrows is not None:
            _axpy(vrows[c], vrows[j], -q)

    def row_add(r, i):
        # row_r += row_i
        _axpy(rows[r], rows[i], -one)
        if ucols is not None:
            _axpy(ucols[i], ucols[r], one)

    def scale_row(r, u):
        _scale(rows[r], u)
        if ucols is not None:
            _scale(ucols[r], ring.unit_inverse(u))

    def row_pair(r, i, x, y, u, w):
        # (row_r, row_i) <- (x row_r + y row_i, u row_r + w row_i), determinant 1
        a, b = rows[r], rows[i]
        rows[r] = _combine(a, b, x, y)
        rows[i] = _combine(a, b, u, w)
        if ucols is not None:
            ca, cb = ucols[r], ucols[i]
            ucols[r] = _combine(ca, cb, w, -u)
            ucols[i] = _combine(ca, cb, -y, x)

    def col_pair(c, j, x, y, u, w):
        # (col_c, col_j) <- (x col_c + y col_j, u col_c + w col_j), determinant 1
        for i in alive:
            row = rows[i]
            a = row.get(c)
            b = row.get(j)
            if a is None and b is None:
                continue
            nc = _lin(a, b, x, y)
            nj = _lin(a, b, u, w)
            _put(row, c, nc)
            _put(row, j, nj)
        if vrows is not None:
            va, vb = vrows[c], vrows[j]
            vrows[c] = _combine(va, vb, w, -u)
            vrows[j] = _combine(va, vb, -y, x)

    def tidy(i):
        u = ring.primitive_unit(rows[i].values())
        if u is not None:
            scale_row(i, u)

    for i in alive:
        tidy(i)

    while True:
        best = None
        for i in alive:
            for j, a in rows[i].items():
                key = (norm(a), i, j)
                if best is None or key < best:
                    best = key
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, r, c = best
        while True:
            # exact eliminations first, then one Bezout step; the side is chosen so the
            # heavy combined line touches as few other entries as possible
            p = rows[r][c]
            col_left = []
            for i in alive:
                if i == r:
                    continue
                a = rows[i].get(c)
                if not a:
                    continue
                q, rem = divmod_(a, p)
                if rem:
                    col_left.append(i)
                else:
                    row_axpy(i, q, r)
                    tidy(i)
            row_left = []
            holders = [i for i in alive if c in rows[i]]
            for j in sorted(j for j in rows[r] if j != c):
                a = rows[r][j]
                q, rem = divmod_(a, p)
                if rem:
                    row_left.append(j)
                else:
                    col_axpy(j, q, c, holders)
            leftover = None
            for i in col_left:
                key = (len(col_left) - 1, norm(rows[i][c]), 0, i)
                if leftover is None or key < leftover:
                    leftover = key
            for j in row_left:
                key = (len(row_left) - 1, norm(rows[r][j]), 1, j)
                if leftover is None or key < leftover:
                    leftover = key
            if leftover is not None:
                _, _, axis, k = leftover
                if axis == 0:
                    a = rows[k][c]
                    g, x, y = ring.xgcd(p, a)
                    row_pair(r, k, x, y, -ring.exact_div(a, g), ring.exact_div(p, g))
                    tidy(r)
                    tidy(k)
                else:
                    a = rows[r][k]
                    g, x, y = ring.xgcd(p, a)
                    col_pair(c, k, x, y, -ring.exact_div(a, g), ring.exact_div(p, g))
                continue
            if any(rows[i].get(c) for i in alive if i != r):
                continue
            p = rows[r][c]
            _, unit = ring.canonical(p)
            if unit != one:
                scale_row(r, unit)
                p = rows[r][c]
            if not ring.is_unit(p):
                offender = None
                for i in alive:
                    if i == r:
                        continue
                    for a in rows[i].values():
                        if divmod_(a, p)[1]:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is not None:
                    row_add(r, offender)
                    continue
            break

        pivots.append((r, c, rows[r][c]))
        alive.remove(r)

    d = tuple(p for _, _, p in pivots)
    u = v = None
    if track_u:
        pr = set(r for r, _, _ in pivots)
        rperm = [r for r, _, _ in pivots] + [i for i in range(R) if i not in pr]
        entries = {}
        for k, src in enumerate(rperm):
            for i, x in ucols[src].items():
                entries[(i, k)] = x
        u = RingMatrix(ring, R, R, entries)
    if track_v:
        pc = set(c for _, c, _ in pivots)
        cperm = [c for _, c, _ in pivots] + [j for j in range(C) if j not in pc]
        entries = {}
        for k, src in enumerate(cperm):
            for j, x in vrows[src].items():
                entries[(k, j)] = x
        v = RingMatrix(ring, C, C, entries)
    return SNFResult(ring, (R, C), d, u, v)


def invariant_factors(A: RingMatrix):
    return smith_normal_form(A, track_u=False, track_v=False).d


# ---------------------------------------------------------------------------
# fraction-free elimination (independent oracle)


def fraction_free_rank(A: RingMatrix) -> int:
    """Rank over the fraction field by one-step fraction-free (Bareiss) elimination."""
    ring = A.ring
    M = A.to_dense()
    R, C = A.shape
    prev = ring.one()
    row = 0
    for col in range(C):
        if row == R:
            break
        piv = next((i for i in range(row, R) if M[i][col]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        p = M[row][col]
        prow = M[row]
        for i in range(row + 1, R):
            mi = M[i]
            a = mi[col]
            for j in range(col + 1, C):
                x = p * mi[j]
                if a and prow[j]:
                    x = x - a * prow[j]
                mi[j] = ring.exact_div(x, prev) if x else x
            mi[col] = ring.zero()
        prev = p
        row += 1
    return row


def determinant(A: RingMatrix):
    """Exact determinant of a square matrix by Bareiss elimination."""
    ring = A.ring
    n = A.rows
    if A.cols != n:
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return ring.one()
    M = A.to_dense()
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return ring.zero()
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        p = M[k][k]
        for i in range(k + 1, n):
            a = M[i][k]
            for j in range(k + 1, n):
                x = p * M[i][j] - a * M[k][j]
                M[i][j] = ring.exact_div(x, prev) if x else x
        prev = p
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det
