"""Rank-SD instances and key pairs.

x = (x_A || x_B) with x_A of length n - k and x_B of length k, H = (I | H')
with H' in F_{q^m}^{(n-k) x k}, and y = x_A + H' x_B.  Only x_B is shared in
the MPC; each party rebuilds its x_A share from y.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .encoding import elems_to_bytes, elems_from_bytes, elem_nbytes
from .params import BY_PID, RankSdParams
from .rank_metric import annihilator, annihilator_eval, fq_rank, rank_weight, in_span
from .symmetric import Symmetric, DOM_SK, DOM_H

MAX_TRIES = 1 << 16


def expand_H(params, seed_H):
    """H' row-major from XOF(seed_H)."""
    sym = Symmetric(params.lam)
    return sym.xof(DOM_H, seed_H).read_elems(params.tower.Fqm, (params.n - params.k, params.k))


def syndrome_AB(tower, H, x_A, x_B):
    """x_A + H' x_B (batched over leading axes of x_B)."""
    Fm = tower.Fqm
    x_B = np.asarray(x_B)
    prod = Fm.mul(H, np.expand_dims(x_B, x_B.ndim - Fm.elem_ndim - 1))
    return Fm.add(x_A, Fm.sum(prod, -1))


@dataclass
class PublicKey:
    params: RankSdParams
    seed_H: bytes
    y: np.ndarray

    @cached_property
    def H(self):
        return expand_H(self.params, self.seed_H)

    def to_bytes(self):
        p = self.params
        return p.pid.to_bytes(2, "big") + self.seed_H + elems_to_bytes(p.tower.Fqm, self.y)

    @classmethod
    def from_bytes(cls, data, params=None):
        pid = int.from_bytes(data[:2], "big")
        params = params or _lookup(pid)
        if params.pid != pid:
            raise ValueError("parameter id mismatch")
        sb = params.seed_bytes
        seed_H = bytes(data[2:2 + sb])
        if len(seed_H) != sb:
            raise ValueError("truncated public key")
        y = elems_from_bytes(params.tower.Fqm, data[2 + sb:], params.n - params.k)
        return cls(params, seed_H, y)

    @staticmethod
    def nbytes(params):
        return 2 + params.seed_bytes + (params.n - params.k) * elem_nbytes(params.tower.Fqm)


@dataclass
class SecretKey:
    params: RankSdParams
    seed_sk: bytes
    # expanded material, rebuilt from seed_sk
    seed_H: bytes = field(repr=False, default=b"")
    support: np.ndarray = field(repr=False, default=None)
    x: np.ndarray = field(repr=False, default=None)
    beta: np.ndarray = field(repr=False, default=None)

    @property
    def x_A(self):
        return self.x[:self.params.n - self.params.k]

    @property
    def x_B(self):
        return self.x[self.params.n - self.params.k:]

    def to_bytes(self):
        return self.params.pid.to_bytes(2, "big") + self.seed_sk

    @classmethod
    def from_bytes(cls, data, params=None):
        pid = int.from_bytes(data[:2], "big")
        params = params or _lookup(pid)
        if params.pid != pid:
            raise ValueError("parameter id mismatch")
        seed = bytes(data[2:])
        if len(seed) != params.seed_bytes:
            raise ValueError("bad secret key length")
        return keygen(seed, params)[1]


def _lookup(pid):
    try:
        return BY_PID[pid]
    except KeyError:
        raise ValueError("unknown parameter id 0x%04x" % pid) from None


def keygen(seed_sk, params):
    """Deterministic key pair from a lambda-bit seed."""
    seed_sk = bytes(seed_sk)
    if len(seed_sk) != params.seed_bytes:
        raise ValueError("seed must be %d bytes" % params.seed_bytes)
    T = params.tower
    Fm = T.Fqm
    sym = Symmetric(params.lam)
    xof = sym.xof(DOM_SK, seed_sk)
    seed_H = xof.read(params.seed_bytes)
    r, n, k = params.r, params.n, params.k

    # support: 1 followed by r - 1 independent draws
    U = Fm.one((1,))
    tries = 0
    while len(U) < r:
        u = xof.read_elems(Fm, 1)
        if not in_span(T, U, u[0]):
            U = np.concatenate([U, u], axis=0)
        tries += 1
        if tries > MAX_TRIES:
            raise RuntimeError("support sampling did not terminate")

    # coordinates: an r x n matrix over F_q of rank exactly r
    for _ in range(MAX_TRIES):
        X = xof.read_elems(T.Fq, (r, n)).astype(np.uint8)
        if fq_rank(X, T.Fq) == r:
            break
    else:
        raise RuntimeError("coordinate sampling did not terminate")
    # x_j = sum_i X[i, j] U_i
    x = Fm.sum(T.scale(Fm, X, np.expand_dims(U, U.ndim - Fm.elem_ndim)), 0)

    H = expand_H(params, seed_H)
    x_A, x_B = x[:n - k], x[n - k:]
    y = syndrome_AB(T, H, x_A, x_B)
    beta = annihilator(T, U)
    sk = SecretKey(params, seed_sk, seed_H, U, x, beta)
    pk = PublicKey(params, seed_H, y)
    pk.__dict__["H"] = H
    return pk, sk


def public_key(sk):
    """Public key matching an expanded secret key."""
    p = sk.params
    H = expand_H(p, sk.seed_H)
    pk = PublicKey(p, sk.seed_H, syndrome_AB(p.tower, H, sk.x_A, sk.x_B))
    pk.__dict__["H"] = H
    return pk


def validate_keypair(pk, sk):
    p = pk.params
    if p != sk.params or pk.seed_H != sk.seed_H:
        return False
    T = p.tower
    Fm = T.Fqm
    x = sk.x
    x_A, x_B = x[:p.n - p.k], x[p.n - p.k:]
    # H x = y  <=>  x_A + H' x_B = y
    if not np.all(Fm.eq(syndrome_AB(T, pk.H, x_A, x_B), pk.y)):
        return False
    if rank_weight(T, x) != p.r:
        return False
    if not in_span(T, x, Fm.one()):
        return False
    return bool(np.all(Fm.is_zero(annihilator_eval(T, sk.beta, x))))
