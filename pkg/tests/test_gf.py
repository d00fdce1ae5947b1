import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rankvar.gf import (GFMatrix, ext_power_matrix, is_irreducible, kron, make_field,
                        nilpotent_jordan_type, rank)
from rankvar.partitions import Partition

FIELDS = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2), (3, 3)]


def random_matrix(F, n, m, rng):
    return GFMatrix(F, [[rng.randrange(F.q) for _ in range(m)] for _ in range(n)])


def test_make_field_examples():
    assert make_field(3, 1).modulus == (0, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(5, 2).modulus == (2, 0, 1)  # x^2 + 2
    assert make_field(5, 2) is make_field(5, 2)
    with pytest.raises(ValueError):
        make_field(2, 1)
    with pytest.raises(ValueError):
        make_field(9, 1)


def test_chosen_modulus_is_first_irreducible_in_search_order():
    for p, e in [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)]:
        F = make_field(p, e)
        assert is_irreducible(list(F.modulus), p)
        for code in range(p ** e):
            cand = [(code // p ** j) % p for j in range(e)] + [1]
            if tuple(cand) == F.modulus:
                break
            assert not is_irreducible(cand, p)


@pytest.mark.parametrize("p, e", FIELDS)
def test_field_axioms(p, e):
    F = make_field(p, e)
    q = F.q
    els = range(q)
    for a in els:
        assert F.add[a, 0] == a and F.mul[a, 1] == a
        assert F.add[a, F.neg[a]] == 0
        if a:
            assert F.mul[a, F.inv[a]] == 1
    rng = random.Random(p * 10 + e)
    for _ in range(300):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
        assert F.mul[F.mul[a, b], c] == F.mul[a, F.mul[b, c]]
        assert F.mul[a, b] == F.mul[b, a]
    # the multiplicative group is cyclic of order q - 1
    assert all(F.power(a, q - 1) == 1 for a in F.nonzero())


def test_rank_examples():
    F = make_field(5)
    assert GFMatrix.identity(F, 4).rank() == 4
    assert GFMatrix.zeros(F, 3, 5).rank() == 0
    assert GFMatrix(F, [[1, 2], [2, 4]]).rank() == 1


@pytest.mark.parametrize("p, e", FIELDS)
def test_rank_equals_transpose_rank(p, e):
    F = make_field(p, e)
    rng = random.Random(7)
    for _ in range(20):
        n, m = rng.randrange(1, 9), rng.randrange(1, 9)
        A = random_matrix(F, n, m, rng)
        # make some low-rank products too
        B = A @ random_matrix(F, m, rng.randrange(1, 9), rng)
        assert A.rank() == A.T.rank()
        assert B.rank() == B.T.rank() <= min(A.rank(), B.cols)


def test_inverse_and_matmul():
    F = make_field(7, 2)
    rng = random.Random(3)
    for _ in range(10):
        A = random_matrix(F, 6, 6, rng)
        if A.rank() < 6:
            continue
        assert A @ A.inverse() == GFMatrix.identity(F, 6)
        assert A.inverse() @ A == GFMatrix.identity(F, 6)


def test_matmul_matches_elementwise_definition():
    F = make_field(5, 3)
    rng = random.Random(11)
    A, B = random_matrix(F, 4, 5, rng), random_matrix(F, 5, 3, rng)
    C = A @ B
    for i, j in itertools.product(range(4), range(3)):
        acc = 0
        for t in range(5):
            acc = F.add[acc, F.mul[A.a[i, t], B.a[t, j]]]
        assert C.a[i, j] == acc


def test_nilpotent_jordan_type_examples():
    F = make_field(3)
    J = GFMatrix.jordan_block(F, 3, 0)
    assert nilpotent_jordan_type(J, 3) == (3,)
    assert nilpotent_jordan_type(GFMatrix.zeros(F, 4), 3) == (1, 1, 1, 1)
    with pytest.raises(ValueError, match="not p-nilpotent"):
        nilpotent_jordan_type(GFMatrix.jordan_block(F, 4, 0), 3)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(1, 7), min_size=1, max_size=6), st.integers(0, 10 ** 6))
def test_jordan_type_round_trip_after_similarity(p, sizes, seed):
    sizes = [min(s, p) for s in sizes]
    F = make_field(p, 2)
    rng = random.Random(seed)
    N = GFMatrix.block_diag(F, [GFMatrix.jordan_block(F, s, 0) for s in sizes])
    n = N.rows
    while True:
        P = random_matrix(F, n, n, rng)
        if P.rank() == n:
            break
    M = P @ N @ P.inverse()
    jt = nilpotent_jordan_type(M, p)
    assert jt == Partition.sorted(sizes)
    assert jt.size == n
    power = GFMatrix.identity(F, n)
    for j in range(1, p + 1):
        power = power @ M
        assert power.rank() == sum(max(s - j, 0) for s in jt)


def test_kron_examples():
    F = make_field(5)
    rng = random.Random(1)
    M = random_matrix(F, 3, 3, rng)
    assert kron(GFMatrix.identity(F, 2), M) == GFMatrix.block_diag(F, [M, M])
    assert kron(GFMatrix(F, [[3]]), M) == M.scale(3)
    assert kron(random_matrix(F, 2, 3, rng), random_matrix(F, 4, 5, rng)).shape == (8, 15)
    with pytest.raises(ValueError):
        kron(M, GFMatrix.identity(make_field(3), 2))


def test_ext_power_examples():
    F = make_field(5)
    rng = random.Random(4)
    G = random_matrix(F, 4, 4, rng)
    assert ext_power_matrix(G, 1) == G
    det = ext_power_matrix(G, 4)
    assert det.shape == (1, 1)
    assert ext_power_matrix(GFMatrix(F, [[1, 1], [0, 1]]), 2) == GFMatrix(F, [[1]])
    with pytest.raises(ValueError):
        ext_power_matrix(G, 5)


def _det(F, A):
    """Leibniz determinant, independent of the elimination code."""
    n = A.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term = F.mul[term, A.a[perm[i], i]]
        total = F.add[total, term if sign == 1 else F.neg[term]]
    return int(total)


def test_ext_power_entries_are_minors():
    F = make_field(3, 2)
    rng = random.Random(5)
    G = random_matrix(F, 5, 5, rng)
    for r in (2, 3):
        E = ext_power_matrix(G, r)
        subsets = list(itertools.combinations(range(5), r))
        for (ri, J), (ci, I) in itertools.product(enumerate(subsets), repeat=2):
            minor = GFMatrix(F, G.a[np.ix_(J, I)])
            assert E.a[ri, ci] == _det(F, minor)


@pytest.mark.parametrize("p, e", [(3, 1), (5, 2), (7, 1)])
def test_ext_power_is_functorial_and_preserves_invertibility(p, e):
    F = make_field(p, e)
    rng = random.Random(p)
    for d in (3, 5, 8):
        G, H = random_matrix(F, d, d, rng), random_matrix(F, d, d, rng)
        for r in (1, 2, d - 1):
            assert ext_power_matrix(G @ H, r) == ext_power_matrix(G, r) @ ext_power_matrix(H, r)
        if G.rank() == d:
            assert ext_power_matrix(G, 2).rank() == ext_power_matrix(G, 2).rows


def test_json_dump():
    F = make_field(5, 2)
    d = GFMatrix(F, [[0, 7], [24, 1]]).to_json()
    assert d == {"p": 5, "e": 2, "modulus": [2, 0, 1], "rows": 2, "cols": 2, "entries": [0, 7, 24, 1]}
