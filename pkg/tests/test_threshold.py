import numpy as np
import pytest

from ranksd.estimator import threshold_size_bound_bits
from ranksd.keys import keygen
from ranksd.mpc import MpcChallenge, party_alpha, party_v
from ranksd.params import get_params, toy_params, THRESHOLD
from ranksd.shamir import INF, interpolation_matrix, apply_matrix
from ranksd.threshold import Threshold, _max_path_len

SIGNING = ["ryde128-thr-l3", "ryde192-thr-l3", "ryde256-thr-l3"]


def _setup(name, tag=0):
    p = get_params(name)
    pk, sk = keygen(bytes([tag]) * p.seed_bytes, p)
    return p, Threshold(p), pk, sk


L1 = _setup("ryde128-thr-l3")


@pytest.mark.parametrize("name", SIGNING)
def test_roundtrip(name):
    p, th, pk, sk = _setup(name, 5)
    data = th.encode(th.sign(sk, pk, b"msg"))
    assert th.verify(pk, b"msg", data)
    assert not th.verify(pk, b"msh", data)
    assert th.encode(th.decode(data)) == data


def test_wrong_key_rejected():
    p, th, pk, sk = L1
    data = th.encode(th.sign(sk, pk, b"m"))
    other, _ = keygen(b"\x09" * p.seed_bytes, p)
    assert not th.verify(other, b"m", data)


@pytest.mark.parametrize("name", SIGNING)
def test_sizes(name):
    p, th, pk, sk = _setup(name)
    sig = th.sign(sk, pk, b"size")
    data = th.encode(sig)
    subsets = th.sym.expand_challenge2_threshold(sig.h2, p.N, p.ell, p.tau)
    assert th.size_bits(subsets) == 8 * len(data)
    assert th.size_bits(subsets) <= th.worst_case_bits() <= threshold_size_bound_bits(p)


def _brute_max_path(N, ell):
    import itertools
    from ranksd.symmetric import merkle_path_len
    return max(merkle_path_len(N, list(I)) for I in itertools.combinations(range(1, N + 1), ell))


@pytest.mark.parametrize("N,ell", [(16, 1), (16, 3), (8, 2), (32, 3), (4, 4)])
def test_max_path_len(N, ell):
    assert _max_path_len(N, ell) == _brute_max_path(N, ell)


def test_bit_flip_fuzz(rng):
    p, th, pk, sk = L1
    data = th.encode(th.sign(sk, pk, b"fuzz"))
    for pos in rng.choice(8 * len(data), size=500, replace=False):
        bad = bytearray(data)
        bad[pos // 8] ^= 1 << (pos % 8)
        assert not th.verify(pk, b"fuzz", bytes(bad)), pos


def test_truncated_rejected():
    p, th, pk, sk = L1
    data = th.encode(th.sign(sk, pk, b"m"))
    for bad in (data[:-1], data + b"\x00", data[:100], b""):
        assert not th.verify(pk, b"m", bad)


def test_deal_interpolates_including_infinity():
    p, th, pk, sk = L1
    sh = th.deal(sk, bytes(p.salt_bytes), 0, bytes(p.seed_bytes))
    assert th.points[-1] == INF
    T = p.tower
    for J in ([1, 2, 3, 4], [7, 100, 200, 256], [253, 254, 255, 256]):
        W = interpolation_matrix(T.Fq, th._pts(J), [0], p.ell)
        x_B = apply_matrix(T.Fq, W, sh.x_B[np.array(J) - 1])[0]
        assert np.array_equal(x_B, sk.x_B)
        beta = apply_matrix(T.Fq, W, sh.beta[np.array(J) - 1])[0]
        assert np.array_equal(beta, sk.beta)


def test_invalid_witness_rejected(monkeypatch):
    """A dealer whose c is off by one yields a nonzero v secret; the verifier
    assumes v(0) = 0, so the recomputed h2 cannot match."""
    p, th, pk, sk = L1
    honest = th.deal
    Fe = p.tower.Fqme

    def bad_deal(sk_, salt, e, root):
        sh = honest(sk_, salt, e, root)
        sh.c[:] = Fe.add(sh.c, Fe.one())   # constant shift of the c polynomial
        return sh

    monkeypatch.setattr(th, "deal", bad_deal)
    data = th.encode(th.sign(sk, pk, b"cheat"))
    assert not th.verify(pk, b"cheat", data)


def test_threads_same_output():
    p, _, pk, sk = L1
    a = Threshold(p).encode(Threshold(p).sign(sk, pk, b"t"))
    b = Threshold(p, threads=3).encode(Threshold(p, threads=3).sign(sk, pk, b"t"))
    assert a == b


def test_constructor_checks():
    with pytest.raises(ValueError):
        Threshold(get_params("ryde128-hyp-short"))
    with pytest.raises(ValueError):
        Threshold(get_params("ryde128-thr-l1"))   # q = 2, estimator only
    assert get_params("ryde128-thr-l1").variant == THRESHOLD


def test_small_threshold_toy():
    p = toy_params(q=256, m=11, n=12, k=5, r=3, N=16, eta=2, tau=3, variant=THRESHOLD, ell=2)
    th = Threshold(p)
    pk, sk = keygen(bytes(p.seed_bytes), p)
    data = th.encode(th.sign(sk, pk, b"x"))
    assert th.verify(pk, b"x", data)


def test_honest_v_shares_reconstruct_to_zero():
    p, th, pk, sk = L1
    T = p.tower
    sh = th.deal(sk, bytes(p.salt_bytes), 0, bytes(p.seed_bytes))
    gamma, eps = th.sym.expand_challenge1(b"c" * 32, T.Fqme, p.n, 1)
    ch = MpcChallenge(gamma[0], eps[0])
    J = [2, 50, 128, 256]
    sub = sh.map(lambda v: v[np.array(J) - 1])
    al, z = party_alpha(T, pk.H, pk.y, sub, ch, th._delta(J), p.r)
    W = interpolation_matrix(T.Fq, th._pts(J), [0], p.ell)
    alpha = apply_matrix(T.Fq, W, al)[0]
    v = party_v(T, sub, ch, z, alpha)
    assert np.all(T.Fqme.is_zero(apply_matrix(T.Fq, W, v)[0]))
