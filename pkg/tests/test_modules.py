import random
from math import comb

import numpy as np
import pytest

from rankvar.gf import GFMatrix, ext_power_matrix, make_field
from rankvar.modules import (b_basis_change, b_basis_rows, direct_sum, ext_power_module, hook_specht,
                             matrix_L, natural_specht, perm_action, quotient_D1, simple_D, x_operator)


def e_vec(n, i):
    v = [0] * (n - 1)
    v[i - 2] = 1
    return v


def test_natural_specht_examples():
    F = make_field(3)
    S = natural_specht(6, 2, F)
    assert S.dim == 5 and S.k == 2
    # g_1 e_2 = e_3 - e_2
    assert S.gens[0].a[:, 0].tolist() == [2, 1, 0, 0, 0]
    assert S.gens[1].a[:, 0].tolist() == [1, 0, 0, 0, 0]
    assert natural_specht(7, 2, F).dim == 6
    with pytest.raises(ValueError):
        natural_specht(8, 2, F)


def test_perm_action_is_a_homomorphism():
    F = make_field(5)
    rng = random.Random(2)
    n = 7
    for _ in range(10):
        s = list(range(1, n + 1))
        t = list(range(1, n + 1))
        rng.shuffle(s)
        rng.shuffle(t)
        st = [s[t[i] - 1] for i in range(n)]
        assert perm_action(st, n, F) == perm_action(s, n, F) @ perm_action(t, n, F)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("k", [2, 3])
def test_generators_and_annihilation(p, k):
    F = make_field(p)
    for n in (k * p, k * p + 1):
        S = natural_specht(n, k, F)
        assert all(S.check().values())
        X = S.xs()
        for i in range(k):
            for j in range(k):
                if i != j:
                    assert (X[i] @ X[j]).is_zero()


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("k", [2, 3])
def test_basis_change_is_lower_triangular(p, k):
    for primed in (False, True):
        A = b_basis_change(k, p, primed=primed)
        assert not np.triu(A.a, 1).any()
        assert np.all(np.diag(A.a) != 0)


def test_basis_rows_examples():
    p, k = 5, 2
    rows = [[x % p for x in r] for r in b_basis_rows(k, p)]
    n = k * p
    x1b1 = [0] * (n - 1)
    x1b1[0], x1b1[1] = -2 % p, 1
    assert rows[1] == x1b1
    assert rows[p - 2] == [1 if 2 <= i <= p else 0 for i in range(2, n + 1)]
    b2 = e_vec(n, p + 1)
    b2[0] = -1 % p
    assert rows[p - 1] == b2


@pytest.mark.parametrize("p, k", [(3, 2), (3, 3), (5, 2)])
def test_basis_rows_are_iterates_of_the_action(p, k):
    for primed in (False, True):
        n = k * p + (1 if primed else 0)
        F = make_field(p)
        S = natural_specht(n, k, F)
        X = S.xs()
        rows = [np.array(r) % p for r in b_basis_rows(k, p, primed)]
        starts = [0] + [p - 1 + (i - 1) * p for i in range(1, k)]
        lengths = [p - 1] + [p] * (k - 1)
        for i, (s, ln) in enumerate(zip(starts, lengths)):
            for t in range(1, ln):
                assert np.array_equal((X[i].a @ rows[s + t - 1]) % p, rows[s + t])


def test_matrix_L_examples():
    F = make_field(3)
    assert matrix_L([1, 1], 2, 3, F).rank() == 3
    assert matrix_L([0, 0], 2, 3, F).is_zero()
    assert matrix_L([1, 0], 2, 3, F).rank() < 3
    with pytest.raises(ValueError):
        matrix_L([1, 1, 1], 2, 3, F)


@pytest.mark.parametrize("p, k", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_direct_and_derived_L_agree(p, k):
    F = make_field(p, 2)
    rng = random.Random(p * 31 + k)
    for _ in range(100):
        alpha = [rng.randrange(F.q) for _ in range(k)]
        for primed in (False, True):
            assert matrix_L(alpha, k, p, F, primed=primed) == matrix_L(alpha, k, p, F, derived=True, primed=primed)


@pytest.mark.parametrize("p, k", [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
def test_rank_of_top_power_of_L(p, k):
    """rank(L^{p-1}) counts the nonzero alpha_j for j >= 2, plus one when
    alpha_1 != 0 and some alpha_j (j >= 2) vanishes."""
    F = make_field(p, 2)
    rng = random.Random(k)
    for _ in range(60):
        alpha = [rng.choice([0, 0] + list(F.nonzero())) for _ in range(k)]
        rk = (matrix_L(alpha, k, p, F) ** (p - 1)).rank()
        tail = sum(1 for a in alpha[1:] if a)
        assert rk == tail + (1 if alpha[0] and tail < k - 1 else 0)


@pytest.mark.parametrize("p, k", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_quotient_D1(p, k):
    D = quotient_D1(k, p)
    assert D.dim == k * p - 2
    assert all(D.check().values())
    # the quotient map e_i -> image intertwines the actions
    F = make_field(p)
    S = natural_specht(k * p, k, F)
    q = np.zeros((k * p - 2, k * p - 1), dtype=np.int64)
    q[:, 0] = -1
    q[:, 1:] = np.eye(k * p - 2, dtype=np.int64)
    Q = GFMatrix.from_ints(F, q)
    for g, h in zip(S.gens, D.gens):
        assert Q @ g == h @ Q


def test_ext_power_module_contract():
    F = make_field(3)
    D = quotient_D1(2, 3, F)
    D2 = ext_power_module(D, 2)
    assert D2.dim == comb(4, 2)
    assert ext_power_module(D, 1) is D
    assert all(D2.check().values())
    alpha = [1, 1]
    X = x_operator(D2, alpha)
    expected = sum(((ext_power_matrix(g, 2) - GFMatrix.identity(F, 6)).scale(a)
                    for a, g in zip(alpha, D.gens)), GFMatrix.zeros(F, 6))
    assert X == expected
    assert X != ext_power_matrix(x_operator(D, alpha), 2)
    with pytest.raises(ValueError):
        ext_power_module(D, 5)


def test_hook_and_simple_dimensions():
    F = make_field(3)
    assert hook_specht(7, 2, 2, F).dim == comb(6, 2)
    assert simple_D(2, 3, 2, F).dim == comb(4, 2)
    assert simple_D(3, 5, 4).dim == comb(13, 4)
    for M in (hook_specht(10, 3, 2, F), simple_D(3, 3, 2, F)):
        assert all(M.check().values())


def test_direct_sum_and_field_change():
    F = make_field(3)
    M = direct_sum(quotient_D1(2, 3, F), natural_specht(6, 2, F))
    assert M.dim == 9 and all(M.check().values())
    F2 = make_field(3, 2)
    assert M.with_field(F2).field == F2
