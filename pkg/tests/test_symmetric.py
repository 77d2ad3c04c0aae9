import hashlib
import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from ranksd.kat import load_symmetric, symmetric_vectors, GGM_ROOT, GGM_SALT
from ranksd.params import get_params
from ranksd.symmetric import Symmetric, merkle_path_len, be16, DOM_MERKLE_LEAF, DOM_MERKLE_NODE

SYM = Symmetric(128)
SALT = bytes(32)


def test_xof_instantiation():
    # domain byte prefix, SHAKE128 at 128 bits and SHAKE256 above
    assert Symmetric(128).digest(3, b"abc") == hashlib.shake_128(b"\x03abc").digest(32)
    assert Symmetric(192).digest(3, b"abc") == hashlib.shake_256(b"\x03abc").digest(48)
    assert Symmetric(256).digest(0) == hashlib.shake_256(b"\x00").digest(64)


def test_domains_separate():
    outs = {SYM.digest(d, b"x") for d in range(15)}
    assert len(outs) == 15


def test_commit_layout():
    c = SYM.commit(SALT, 3, 7, b"state", b"rho")
    assert c == SYM.digest(0, SALT + be16(3) + be16(7) + b"state" + b"rho")


def test_pinned_vectors():
    assert symmetric_vectors() == load_symmetric()


@pytest.mark.parametrize("N", [2 ** d for d in range(0, 9)])
def test_ggm_open_recover_all_positions(N):
    root = bytes(range(16))
    nodes, leaves = SYM.ggm_expand(root, SALT, N)
    assert len({s for s, _ in leaves}) == N
    for i_star in range(1, N + 1):
        path = SYM.ggm_open(nodes, N, i_star)
        assert len(path) == N.bit_length() - 1
        rec = SYM.ggm_recover(path, SALT, N, i_star)
        assert rec[i_star - 1] is None
        assert all(rec[i] == leaves[i] for i in range(N) if i != i_star - 1)


def test_ggm_path_hides_leaf():
    N = 16
    nodes, leaves = SYM.ggm_expand(GGM_ROOT, GGM_SALT, N)
    path = SYM.ggm_open(nodes, N, 5)
    assert leaves[4][0] not in path and nodes[1] not in path


def test_ggm_rejects_bad_input():
    nodes, _ = SYM.ggm_expand(GGM_ROOT, GGM_SALT, 8)
    path = SYM.ggm_open(nodes, 8, 2)
    with pytest.raises(ValueError):
        SYM.ggm_recover(path[:-1], GGM_SALT, 8, 2)
    with pytest.raises(ValueError):
        SYM.ggm_recover([p[:-1] for p in path], GGM_SALT, 8, 2)
    with pytest.raises(ValueError):
        SYM.ggm_open(nodes, 8, 9)
    with pytest.raises(ValueError):
        SYM.ggm_expand(GGM_ROOT, GGM_SALT, 6)


def test_ggm_salt_matters():
    _, a = SYM.ggm_expand(GGM_ROOT, bytes(32), 4)
    _, b = SYM.ggm_expand(GGM_ROOT, b"\x01" + bytes(31), 4)
    assert all(x != y for x, y in zip(a, b))


def _naive_root(leaves):
    level = [SYM.digest(DOM_MERKLE_LEAF, v) for v in leaves]
    while len(level) > 1:
        level = [SYM.digest(DOM_MERKLE_NODE, level[i], level[i + 1]) for i in range(0, len(level), 2)]
    return level[0]


N16 = 16
LEAVES16 = [bytes([i]) * 5 for i in range(N16)]
TREE16 = SYM.merkle_tree(LEAVES16)


def test_merkle_root_matches_naive():
    assert TREE16[1] == _naive_root(LEAVES16)


@pytest.mark.parametrize("size", [1, 3])
def test_merkle_all_subsets(size):
    for I in itertools.combinations(range(1, N16 + 1), size):
        I = list(I)
        path = SYM.merkle_auth(TREE16, I)
        assert len(path) == merkle_path_len(N16, I)
        got = SYM.merkle_verify(N16, [LEAVES16[i - 1] for i in I], path, I)
        assert got == TREE16[1]
        # a changed leaf changes the root
        bad = [LEAVES16[i - 1] for i in I]
        bad[0] = b"x" + bad[0]
        assert SYM.merkle_verify(N16, bad, path, I) != TREE16[1]


def test_merkle_path_length_errors():
    I = [2, 9, 16]
    path = SYM.merkle_auth(TREE16, I)
    leaves = [LEAVES16[i - 1] for i in I]
    with pytest.raises(ValueError):
        SYM.merkle_verify(N16, leaves, path[:-1], I)
    with pytest.raises(ValueError):
        SYM.merkle_verify(N16, leaves, path + [path[0]], I)


def test_merkle_singleton_path_is_depth():
    for i in range(1, N16 + 1):
        assert merkle_path_len(N16, [i]) == 4
    assert merkle_path_len(N16, list(range(1, 17))) == 0


def test_challenge1_shapes():
    T = get_params("ryde128-thr-l3").tower
    g, e = SYM.expand_challenge1(b"h" * 32, T.Fqme, 12, 6)
    assert g.shape == (6, 12) + T.Fqme.elem_shape
    assert e.shape == (6,) + T.Fqme.elem_shape


@given(st.binary(min_size=32, max_size=32), st.sampled_from([4, 16, 256]), st.integers(1, 3))
def test_challenge2_threshold_sets(h2, N, ell):
    sets = SYM.expand_challenge2_threshold(h2, N, ell, 5)
    assert len(sets) == 5
    for I in sets:
        assert I == sorted(I) and len(set(I)) == ell
        assert all(1 <= i <= N for i in I)


def test_challenge2_threshold_uniform():
    # every 2-subset of 1..4 should appear about equally often
    cnt = Counter()
    for k in range(3000):
        for I in SYM.expand_challenge2_threshold(k.to_bytes(4, "big"), 4, 2, 1):
            cnt[tuple(I)] += 1
    assert len(cnt) == 6
    assert max(cnt.values()) - min(cnt.values()) < 150


def test_challenge2_hypercube_range():
    for N in (2, 32, 256):
        out = SYM.expand_challenge2_hypercube(b"abc", N, 300)
        assert min(out) >= 1 and max(out) <= N
