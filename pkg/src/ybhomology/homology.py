"""Homology of a free chain complex at one degree, over a Euclidean ring."""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import RingMatrix
from .rings import Ring
from .snf import smith_normal_form

__all__ = ["HomologyGroup", "BrokenComplexError", "homology_from_boundaries", "canonical_associate"]


class BrokenComplexError(ArithmeticError):
    """Raised when consecutive boundary maps do not compose to zero."""


def canonical_associate(a, ring: Ring):
    """Normalized representative of the associate class of a nonzero ``a``."""
    return ring.canonical_associate(a)


@dataclass(frozen=True)
class HomologyGroup:
    """``R^free_rank`` plus ``R/(t)`` for each ``t`` in ``torsion``."""

    ring: Ring
    free_rank: int
    torsion: tuple = field(default_factory=tuple)
    # rank bookkeeping, kept for consistency checks
    kernel_rank: int | None = None
    image_rank: int | None = None

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def torsion_multiplicities(self):
        counts = {}
        for t in self.torsion:
            counts[t] = counts.get(t, 0) + 1
        return counts

    def describe(self):
        code = self.ring.code
        base = {"Z": "Z", "Q": "Q", "Qy": "k", "Qq": "k"}.get(code, code)
        parts = []
        if self.free_rank:
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        for t, k in self.torsion_multiplicities().items():
            piece = f"{base}/({self.ring.format(t)})"
            parts.append(piece if k == 1 else f"({piece})^{k}")
        return " + ".join(parts) if parts else "0"

    def to_json_obj(self):
        return {"free_rank": self.free_rank, "torsion": [self.ring.format(t) for t in self.torsion]}

    def __eq__(self, other):
        if not isinstance(other, HomologyGroup):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.free_rank == other.free_rank
            and tuple(self.torsion) == tuple(other.torsion)
        )

    def __hash__(self):
        return hash((self.ring.code, self.free_rank, tuple(self.torsion)))


def _sorted_torsion(factors, ring):
    return tuple(sorted(factors, key=ring.sort_key))


def homology_from_boundaries(d_n: RingMatrix, d_n1: RingMatrix, *, check=True, method="kernel") -> HomologyGroup:
    """``ker d_n / im d_n1`` where ``d_n: C_n -> C_{n-1}`` and ``d_n1: C_{n+1} -> C_n``.

    ``method="kernel"`` follows the textbook route: a kernel basis of ``d_n``
    from its Smith form, coordinates of ``im d_n1`` in that basis via the
    stored column transform, and a second Smith form.  ``method="direct"``
    reads the torsion straight off the invariant factors of ``d_n1``, which is
    valid because the kernel of a map between free modules over a PID is a
    direct summand.
    """
    if d_n.ring != d_n1.ring:
        raise ValueError(f"ring mismatch: {d_n.ring.code} vs {d_n1.ring.code}")
    if d_n.cols != d_n1.rows:
        raise ValueError(f"boundary shapes do not compose: {d_n.shape} and {d_n1.shape}")
    ring = d_n.ring
    if check and not (d_n @ d_n1).is_zero():
        raise BrokenComplexError("boundary composite is nonzero")
    rank_cn = d_n.cols

    if method == "direct":
        r = smith_normal_form(d_n, track_u=False, track_v=False).rank
        s = smith_normal_form(d_n1, track_u=False, track_v=False)
        torsion = [ring.canonical_associate(x) for x in s.d if not ring.is_unit(x)]
        return HomologyGroup(ring, rank_cn - r - s.rank, _sorted_torsion(torsion, ring), rank_cn - r, s.rank)
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")

    first = smith_normal_form(d_n, track_u=False, track_v=True)
    r = first.rank
    kernel_rank = rank_cn - r
    # kernel coordinates of x are (V x)[r:]
    coords = first.v.submatrix(rows=list(range(r, rank_cn))) @ d_n1
    second = smith_normal_form(coords, track_u=False, track_v=False)
    torsion = [ring.canonical_associate(x) for x in second.d if not ring.is_unit(x)]
    return HomologyGroup(ring, kernel_rank - second.rank, _sorted_torsion(torsion, ring), kernel_rank, second.rank)
