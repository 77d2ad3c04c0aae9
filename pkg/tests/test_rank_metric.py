import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ranksd.field import FieldTower, lex_smallest_gf2
from ranksd.params import get_params
from ranksd.rank_metric import (annihilator, annihilator_eval, annihilator_full, fq_inverse,
                                fq_matmul, fq_rank, from_matrix, gaussian_binomial,
                                gaussian_binomial_log2, in_span, matrix_of, qpoly_eval,
                                rank_weight, span_elements, support_basis)

from helpers import rand_elems


def small_tower(m):
    return FieldTower(2, m, 1, lex_smallest_gf2(m))


def int_span(basis):
    out = {0}
    for b in basis:
        out |= {v ^ b for v in out}
    return frozenset(out)


def subspaces(m, r, with_one):
    """All r-dim subspaces of GF(2)^m (those containing 1 if asked)."""
    seen = set()
    nonzero = range(1, 1 << m)
    if with_one:
        for rest in itertools.combinations(range(2, 1 << m), r - 1):
            S = int_span((1,) + rest)
            if len(S) == 1 << r:
                seen.add(S)
    else:
        for basis in itertools.combinations(nonzero, r):
            S = int_span(basis)
            if len(S) == 1 << r:
                seen.add(S)
    return seen


def test_matrix_roundtrip(rng):
    T = get_params("ryde128-hyp-short").tower
    x = rand_elems(T.Fqm, 1000, rng)
    assert np.all(T.Fqm.eq(from_matrix(T, matrix_of(T, x)), x))
    T = get_params("ryde128-thr-l3").tower
    x = rand_elems(T.Fqm, 1000, rng)
    assert np.all(T.Fqm.eq(from_matrix(T, matrix_of(T, x)), x))


@pytest.mark.parametrize("name", ["ryde128-hyp-short", "ryde128-thr-l3"])
def test_rank_of_structured_vectors(name, rng):
    p = get_params(name)
    T = p.tower
    Fm = T.Fqm
    for r in (1, 2, 5):
        while True:
            U = rand_elems(Fm, r, rng)
            if fq_rank(matrix_of(T, U), T.Fq) == r:
                break
        X = rng.integers(0, T.q, size=(r, 8), dtype=np.uint8)
        x = Fm.sum(T.scale(Fm, X, np.expand_dims(U, U.ndim - Fm.elem_ndim)), 0)
        assert rank_weight(T, x) == fq_rank(X, T.Fq)
        B = support_basis(T, x)
        assert len(B) == rank_weight(T, x)
        for u in B:
            assert in_span(T, U, u)
    assert rank_weight(T, Fm.zeros((4,))) == 0
    with pytest.raises(ValueError):
        support_basis(T, Fm.zeros((4,)))


def test_fq_inverse_256(rng):
    Fq = get_params("ryde128-thr-l3").tower.Fq
    for _ in range(20):
        M = rng.integers(0, 256, size=(5, 5), dtype=np.uint8)
        if fq_rank(M, Fq) < 5:
            continue
        assert np.array_equal(fq_matmul(M, fq_inverse(M, Fq), Fq), np.eye(5, dtype=np.uint8))


@pytest.mark.parametrize("m", range(3, 9))
@pytest.mark.parametrize("r", [1, 2, 3])
def test_annihilator_exhaustive(m, r):
    """Over every r-dim subspace U containing 1, L_U vanishes exactly on U."""
    T = small_tower(m)
    Fm = T.Fqm
    everything = np.arange(1 << m, dtype=Fm.dtype)
    for S in subspaces(m, r, with_one=True):
        basis = sorted(S - {0})
        U = [1]
        for v in basis:
            if len(U) == r:
                break
            if v not in int_span(U):
                U.append(v)
        beta = annihilator(T, np.array(U, dtype=Fm.dtype))
        assert len(beta) == r - 1
        vals = annihilator_eval(T, beta, everything)
        zeros = frozenset(int(v) for v in everything[Fm.is_zero(vals)])
        assert zeros == S


@pytest.mark.parametrize("m", [3, 4, 5])
def test_annihilator_full_any_subspace(m):
    T = small_tower(m)
    Fm = T.Fqm
    everything = np.arange(1 << m, dtype=Fm.dtype)
    for r in (1, 2, 3):
        for S in subspaces(m, r, with_one=False):
            basis = []
            for v in sorted(S - {0}):
                if v not in int_span(basis):
                    basis.append(v)
            L = annihilator_full(T, np.array(basis, dtype=Fm.dtype))
            assert int(L[-1]) == 1                      # monic of q-degree r
            vals = qpoly_eval(T, L, everything)
            assert frozenset(int(v) for v in everything[Fm.is_zero(vals)]) == S


def test_annihilator_requires_one_in_span():
    T = small_tower(5)
    with pytest.raises(ValueError):
        annihilator(T, np.array([2, 4], dtype=T.Fqm.dtype))
    with pytest.raises(ValueError):
        annihilator_full(T, np.array([2, 2], dtype=T.Fqm.dtype))


def test_annihilator_q256(rng):
    T = get_params("ryde128-thr-l3").tower
    Fm = T.Fqm
    U = np.concatenate([Fm.one((1,)), rand_elems(Fm, 2, rng)])
    beta = annihilator(T, U)
    span = span_elements(T, U[:2])
    assert np.all(Fm.is_zero(annihilator_eval(T, beta, span)))
    outside = rand_elems(Fm, 50, rng)
    inside = np.array([in_span(T, U, w) for w in outside])
    vals = annihilator_eval(T, beta, outside)
    assert np.array_equal(Fm.is_zero(vals), inside)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_gaussian_binomial_counts_subspaces(m):
    for r in range(0, m + 1):
        count = 1 if r == 0 else len(subspaces(m, r, with_one=False))
        assert gaussian_binomial(m, r, 2) == count


@given(st.integers(0, 40), st.integers(0, 40), st.sampled_from([2, 3, 4, 256]))
def test_gaussian_binomial_symmetry(m, r, q):
    if r > m:
        with pytest.raises(ValueError):
            gaussian_binomial(m, r, q)
        return
    assert gaussian_binomial(m, r, q) == gaussian_binomial(m, m - r, q)
    if 0 < r < m:
        # Pascal-type recurrence
        assert gaussian_binomial(m, r, q) == (gaussian_binomial(m - 1, r - 1, q)
                                              + q ** r * gaussian_binomial(m - 1, r, q))


def test_gaussian_binomial_log2_size():
    # close to r (m - r) log2 q, and strictly above it
    v = gaussian_binomial_log2(31, 10, 2)
    assert 210 < v < 212
    ref = sum(math.log2(2 ** 31 - 2 ** i) - math.log2(2 ** 10 - 2 ** i) for i in range(10))
    assert math.isclose(v, ref, abs_tol=1e-9)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_rank_exhaustive_small(m):
    """rank_weight equals the dimension of the span, for every x in (F_{2^m})^n, n <= 3,
    and for n = 4 on a sample."""
    T = small_tower(m)
    Fm = T.Fqm
    for n in (1, 2, 3):
        for xv in itertools.product(range(1 << m), repeat=n):
            dim = len(int_span(xv)).bit_length() - 1
            assert rank_weight(T, np.array(xv, dtype=Fm.dtype)) == dim
    for xv in itertools.islice(itertools.product(range(1 << m), repeat=4), 0, None, 7):
        assert rank_weight(T, np.array(xv, dtype=Fm.dtype)) == len(int_span(xv)).bit_length() - 1


def test_gf4_examples():
    T = small_tower(2)
    Fm = T.Fqm
    w = 0b10
    x = np.array([1, w], dtype=Fm.dtype)
    assert rank_weight(T, x) == 2
    assert len(support_basis(T, x)) == 2
    assert rank_weight(T, np.array([3, 3, 3], dtype=Fm.dtype)) == 1
    # U = GF(4): L(X) = X^4 - X, so beta_1 = 0
    beta = annihilator(T, np.array([1, w], dtype=Fm.dtype))
    assert len(beta) == 1 and int(beta[0]) == 0
    assert [int(v) for v in support_basis(T, np.array([1, 1, 1], dtype=Fm.dtype))] == [1]


def test_rank_basis_independent(rng):
    """Rank via a second F_q basis (random invertible change of coordinates)."""
    T = get_params("ryde128-hyp-short").tower
    Fm = T.Fqm
    for _ in range(20):
        while True:
            P = rng.integers(0, 2, size=(T.m, T.m), dtype=np.uint8)
            if fq_rank(P, T.Fq) == T.m:
                break
        x = rand_elems(Fm, 12, rng)
        M = matrix_of(T, x)                      # (m, n) coordinates
        assert fq_rank(fq_matmul(P, M, T.Fq), T.Fq) == rank_weight(T, x)


def test_annihilator_linear(rng):
    T = get_params("ryde128-hyp-short").tower
    Fm = T.Fqm
    U = np.concatenate([Fm.one((1,)), rand_elems(Fm, 4, rng)])
    beta = annihilator(T, U)
    x, y = rand_elems(Fm, 100, rng), rand_elems(Fm, 100, rng)
    lhs = annihilator_eval(T, beta, Fm.add(x, y))
    rhs = Fm.add(annihilator_eval(T, beta, x), annihilator_eval(T, beta, y))
    assert np.all(Fm.eq(lhs, rhs))
