import random
from itertools import combinations, permutations
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybhomology import (
    GF,
    QQ_Q,
    QY,
    ZZ,
    FractionField,
    LaurentPoly,
    RingMatrix,
    UnsupportedRingError,
    determinant,
    fraction_free_rank,
    invariant_factors,
    is_unit_determinant,
    smith_normal_form,
)

from .test_acceptance import _random_laurent, snf_contract_failures
from .test_laurent import laurent
from .test_matrix import int_matrix


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def determinantal_divisors(rows):
    """``D_k`` = gcd of all ``k x k`` minors, by brute force."""
    r = len(rows)
    c = len(rows[0]) if rows else 0
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rs in combinations(range(r), k):
            for cs in combinations(range(c), k):
                g = gcd(g, leibniz([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def random_unimodular(ring, n, rng, steps=12, pick=None):
    pick = pick or (lambda: ring.coerce(rng.randint(-3, 3)))
    M = RingMatrix.identity(ring, n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        E = RingMatrix.identity(ring, n)
        E = E + RingMatrix(ring, n, n, {(i, j): pick()})
        M = E @ M
    return M


def test_small_known_case():
    A = RingMatrix.from_dense(ZZ, [[2, 4], [6, 8]])
    res = smith_normal_form(A)
    assert res.d == (2, 4)
    assert res.u @ res.diagonal() @ res.v == A


def test_zero_and_empty():
    Z = RingMatrix.zeros(ZZ, 3, 2)
    res = smith_normal_form(Z)
    assert res.d == () and res.rank == 0
    assert res.u @ res.diagonal() @ res.v == Z
    E = RingMatrix.zeros(ZZ, 0, 4)
    assert smith_normal_form(E).rank == 0


@given(int_matrix(max_rows=4, max_cols=4))
def test_integer_contract(A):
    assert snf_contract_failures(A) == []


@given(int_matrix(max_rows=4, max_cols=4, lo=-6, hi=6))
def test_integer_invariants_match_determinantal_divisors(A):
    rows = A.to_dense()
    D = determinantal_divisors(rows) if A.rows and A.cols else []
    expected = [D[0]] + [D[k] // D[k - 1] for k in range(1, len(D))] if D else []
    assert list(invariant_factors(A)) == expected


@st.composite
def laurent_matrix(draw, max_dim=3):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    cells = draw(st.lists(laurent(max_span=2), min_size=r * c, max_size=r * c))
    return RingMatrix(QY, r, c, {(k // c, k % c): v for k, v in enumerate(cells) if v})


@given(laurent_matrix())
def test_laurent_contract(A):
    assert snf_contract_failures(A) == []


@given(laurent_matrix(max_dim=2))
def test_laurent_two_by_two_invariants(A):
    # d_1 = gcd of entries, d_1 d_2 = determinant up to a unit
    d = smith_normal_form(A).d
    entries = list(A.entries.values())
    if not entries:
        assert d == ()
        return
    g = entries[0]
    for e in entries[1:]:
        g = QY.xgcd(g, e)[0]
    assert d[0] == QY.canonical_associate(g)
    if A.rows == A.cols == 2:
        det = determinant(A)
        if det:
            assert d[0] * d[1] == QY.canonical_associate(det)
        else:
            assert len(d) == 1


@pytest.mark.parametrize("seed", range(8))
def test_unimodular_conjugation_invariance(seed):
    rng = random.Random(seed)
    r, c = rng.randint(2, 6), rng.randint(2, 6)
    A = RingMatrix(ZZ, r, c, {(i, j): rng.randint(-6, 6) for i in range(r) for j in range(c)})
    P = random_unimodular(ZZ, r, rng)
    Q = random_unimodular(ZZ, c, rng)
    assert invariant_factors(P @ A @ Q) == invariant_factors(A)


@pytest.mark.parametrize("seed", range(4))
def test_laurent_conjugation_invariance(seed):
    rng = random.Random(100 + seed)
    r, c = rng.randint(2, 4), rng.randint(2, 4)
    A = RingMatrix(QY, r, c, {(i, j): v for i in range(r) for j in range(c) if (v := _random_laurent(rng))})
    pick = lambda: LaurentPoly({rng.randint(-1, 1): rng.randint(-2, 2)})  # noqa: E731
    P = random_unimodular(QY, r, rng, steps=4, pick=pick)
    Q = random_unimodular(QY, c, rng, steps=4, pick=pick)
    assert invariant_factors(P @ A @ Q) == invariant_factors(A)


@given(int_matrix(max_rows=4, max_cols=4).filter(lambda M: M.rows == M.cols))
def test_determinant_matches_leibniz(A):
    expected = leibniz(A.to_dense()) if A.rows else 1
    assert determinant(A) == expected


def test_torsion_over_laurent_ring():
    y = QY.gen()
    A = RingMatrix(QY, 2, 2, {(0, 0): y**2 - 1, (1, 1): y**4 - 1})
    res = smith_normal_form(A)
    assert res.d == (QY.canonical_associate(y**2 - 1), QY.canonical_associate(y**4 - 1))
    B = RingMatrix(QY, 2, 2, {(0, 0): y - 1, (1, 1): y + 1})
    assert smith_normal_form(B).d == (QY.one(), QY.canonical_associate(y**2 - 1))


def test_prime_field_rank():
    F = GF(3)
    A = RingMatrix.from_dense(F, [[1, 2, 0], [2, 1, 0], [0, 0, 3]])
    res = smith_normal_form(A)
    assert res.rank == fraction_free_rank(A) == 1
    assert res.u @ res.diagonal() @ res.v == A


def test_fraction_field_rejected():
    A = RingMatrix.identity(FractionField(QQ_Q), 2)
    with pytest.raises(UnsupportedRingError):
        smith_normal_form(A)


def test_tracking_switches():
    A = RingMatrix.from_dense(ZZ, [[4, 6], [6, 9]])
    res = smith_normal_form(A, track_u=False, track_v=False)
    assert res.u is None and res.v is None
    assert res.d == smith_normal_form(A).d == (1,)


def test_determinism():
    rng = random.Random(7)
    A = RingMatrix(QY, 5, 6, {(i, j): v for i in range(5) for j in range(6) if (v := _random_laurent(rng))})
    a, b = smith_normal_form(A), smith_normal_form(A)
    assert a.d == b.d and a.u == b.u and a.v == b.v


def test_pivot_rule_prefers_small_norm_then_position():
    # the unit at (1, 2) is taken first; the result still satisfies the contract
    A = RingMatrix.from_dense(ZZ, [[4, 6, 8], [10, 12, -1]])
    assert snf_contract_failures(A) == []
    assert is_unit_determinant(smith_normal_form(A).u)
