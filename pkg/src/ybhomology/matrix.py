"""Sparse matrices over the coefficient rings, plus the JSON interchange format."""

from __future__ import annotations

import json
from collections import defaultdict

from .rings import Ring, ring_from_code

__all__ = ["RingMatrix"]


class RingMatrix:
    """Immutable sparse matrix with entries in a :class:`~ybhomology.rings.Ring`.

    ``entries`` maps ``(row, col)`` to a nonzero ring element; zeros are never
    stored.
    """

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                if v:
                    clean[(i, j)] = v
        self.entries = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n):
        one = ring.one()
        return cls(ring, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def from_dense(cls, ring, data, cols=None):
        data = [list(r) for r in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                v = ring.coerce(v)
                if v:
                    entries[(i, j)] = v
        return cls(ring, rows, cols, entries)

    @classmethod
    def from_columns(cls, ring, rows, columns):
        """Build from a list of ``{row: value}`` column dictionaries."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    entries[(i, j)] = v
        return cls(ring, rows, len(columns), entries)

    # -- access ---------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        return self.entries.get(key, self.ring.zero())

    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def to_dense(self):
        zero = self.ring.zero()
        out = [[zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def column_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return cols

    # -- algebra --------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring.code} vs {other.ring.code}")

    def __matmul__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        self._check_ring(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        other_rows = defaultdict(list)
        for (j, k), v in other.entries.items():
            other_rows[j].append((k, v))
        acc = {}
        for (i, j), a in self.entries.items():
            for k, b in other_rows.get(j, ()):
                key = (i, k)
                if key in acc:
                    acc[key] = acc[key] + a * b
                else:
                    acc[key] = a * b
        return RingMatrix(self.ring, self.rows, other.cols, acc)

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            acc[k] = acc[k] + v if k in acc else v
        return RingMatrix(self.ring, self.rows, self.cols, acc)

    def __neg__(self):
        return RingMatrix(self.ring, self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return RingMatrix(self.ring, self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def transpose(self):
        return RingMatrix(self.ring, self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def submatrix(self, rows=None, cols=None):
        """Select rows and columns by index lists (``None`` keeps all)."""
        rmap = {r: k for k, r in enumerate(rows)} if rows is not None else None
        cmap = {c: k for k, c in enumerate(cols)} if cols is not None else None
        out = {}
        for (i, j), v in self.entries.items():
            ii = rmap.get(i) if rmap is not None else i
            jj = cmap.get(j) if cmap is not None else j
            if ii is not None and jj is not None:
                out[(ii, jj)] = v
        return RingMatrix(
            self.ring,
            len(rows) if rows is not None else self.rows,
            len(cols) if cols is not None else self.cols,
            out,
        )

    def map(self, fn, ring=None):
        """Apply ``fn`` entrywise (zeros stay zero) and optionally change ring."""
        ring = ring or self.ring
        return RingMatrix(ring, self.rows, self.cols, {k: fn(v) for k, v in self.entries.items()})

    def column_sums(self):
        sums = [self.ring.zero() for _ in range(self.cols)]
        for (_, j), v in self.entries.items():
            sums[j] = sums[j] + v
        return sums

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.entries.keys() != other.entries.keys():
            return False
        return all(v == other.entries[k] for k, v in self.entries.items())

    __hash__ = None

    def __repr__(self):
        return f"RingMatrix({self.ring.code}, {self.rows}x{self.cols}, nnz={len(self.entries)})"

    def pretty(self):
        dense = self.to_dense()
        cells = [[self.ring.format(v) for v in row] for row in dense]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)

    # -- interchange ----------------------------------------------------

    def to_json_obj(self):
        return {
            "ring": self.ring.code,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, self.ring.format(v)] for (i, j), v in sorted(self.entries.items())],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_json_obj(), **kwargs)

    @classmethod
    def from_json_obj(cls, obj):
        try:
            ring = ring_from_code(obj["ring"])
            rows, cols = int(obj["rows"]), int(obj["cols"])
            raw = obj.get("entries", [])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed matrix object: {exc}") from None
        entries = {}
        for item in raw:
            if len(item) != 3:
                raise ValueError(f"matrix entry must be [i, j, coeff], got {item!r}")
            i, j, text = item
            v = ring.parse(text)
            if v:
                key = (int(i), int(j))
                entries[key] = entries[key] + v if key in entries else v
        return cls(ring, rows, cols, entries)

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))
