"""Parameter sets and their field moduli."""
from dataclasses import dataclass, replace
from functools import lru_cache
import math

import numpy as np

from .field import FieldTower, BinaryField, ExtensionField, lex_smallest_gf2, lex_smallest_ext

HYPERCUBE = "hypercube"
THRESHOLD = "threshold"

# lexicographically smallest irreducible moduli, pinned so that construction
# only has to verify them (see field.lex_smallest_*)
F256_MODULUS = 0x1B1  # x^8 + x^7 + x^5 + x^4 + 1

GF2_MODULI = {
    31: 0x90000001,     # x^31 + x^28 + 1
    37: 0x3F00000001,   # x^37 + x^5 + x^4 + x^3 + x^2 + x + 1
    43: 0x9A000000001,  # x^43 + x^40 + x^39 + x^37 + 1
}

# q = 256: coefficients f_0..f_{m-1} of the degree-m modulus over F_256
F256_EXT_MODULI = {
    11: (1,) + (0,) * 9 + (2,),
    13: (1,) + (0,) * 11 + (7,),
    17: (1,) + (0,) * 15 + (3,),
}

# degree-eta moduli over F_{q^m}; coefficients given as element integers
ETA_MODULI = {
    (2, 31, 2): (1, 1),
    (2, 37, 2): (1, 1),
    (2, 43, 2): (1, 1),
    (256, 11, 2): (1, 7),
    (256, 17, 3): (1, 0, 1),
}


@lru_cache(maxsize=None)
def default_moduli(q, m, eta):
    """(mod_q, mod_qm, mod_qme) for a tower, from the pinned table when
    available and from the lexicographic search otherwise."""
    if q == 2:
        mod_q = None
        mod_qm = GF2_MODULI.get(m) or lex_smallest_gf2(m)
        base = BinaryField(m, mod_qm)
    elif q == 256:
        mod_q = F256_MODULUS
        mod_qm = F256_EXT_MODULI.get(m)
        F8 = BinaryField(8, mod_q, q=256)
        if mod_qm is None:
            mod_qm = tuple(lex_smallest_ext(F8, m))
        base = ExtensionField(F8, np.array(mod_qm, dtype=np.uint8))
    else:
        raise ValueError("q must be 2 or 256")
    if eta == 1:
        mod_qme = None
    else:
        mod_qme = ETA_MODULI.get((q, m, eta)) or tuple(lex_smallest_ext(base, eta))
    return mod_q, mod_qm, mod_qme


_TOWERS = {}


@dataclass(frozen=True)
class RankSdParams:
    name: str
    pid: int
    lam: int
    q: int
    m: int
    n: int
    k: int
    r: int
    N: int
    eta: int
    tau: int
    variant: str = HYPERCUBE
    ell: int = 0
    signing: bool = True   # False for estimator-only rows
    table_kb: float = 0.0  # size reported in the published tables

    def __post_init__(self):
        if not (0 < self.k <= self.n):
            raise ValueError("need 0 < k <= n")
        if not (1 <= self.r <= min(self.m, self.n)):
            raise ValueError("need 1 <= r <= min(m, n)")
        if self.variant == HYPERCUBE:
            if self.N < 1 or self.N & (self.N - 1):
                raise ValueError("hypercube N must be a power of two")
        elif self.variant == THRESHOLD:
            if self.ell < 1 or self.ell + 1 > self.N:
                raise ValueError("need 1 <= ell < N")
            if self.signing and (self.q != 256 or self.N > self.q):
                raise ValueError("threshold signing needs q = 256 and N <= q")
        else:
            raise ValueError("unknown variant %r" % self.variant)
        if self.lam not in (128, 192, 256) and self.lam % 8:
            raise ValueError("lambda must be a multiple of 8")

    @property
    def D(self):
        return int(math.log2(self.N))

    @property
    def log2q(self):
        return 1 if self.q == 2 else 8

    @property
    def seed_bytes(self):
        return self.lam // 8

    @property
    def digest_bytes(self):
        return self.lam // 4

    salt_bytes = digest_bytes

    @property
    def tower(self):
        key = (self.q, self.m, self.eta)
        if key not in _TOWERS:
            mod_q, mod_qm, mod_qme = default_moduli(*key)
            _TOWERS[key] = FieldTower(self.q, self.m, self.eta, mod_qm, mod_qme, mod_q)
        return _TOWERS[key]

    def with_(self, **kw):
        return replace(self, **kw)


def _mk(name, pid, lam, code, N, eta, tau, variant=HYPERCUBE, ell=0, signing=True, kb=0.0):
    q, m, n, k, r = code
    return RankSdParams(name, pid, lam, q, m, n, k, r, N, eta, tau, variant, ell, signing, kb)


_CODES_Q2 = {128: (2, 31, 33, 15, 10), 192: (2, 37, 41, 18, 13), 256: (2, 43, 47, 18, 17)}

PARAMS = {}
for _p in [
    _mk("ryde128-hyp-short", 0x0101, 128, _CODES_Q2[128], 256, 1, 20, kb=5.9),
    _mk("ryde192-hyp-short", 0x0102, 192, _CODES_Q2[192], 256, 1, 29, kb=12.9),
    _mk("ryde256-hyp-short", 0x0103, 256, _CODES_Q2[256], 256, 1, 38, kb=22.8),
    _mk("ryde128-hyp-fast", 0x0201, 128, _CODES_Q2[128], 32, 1, 30, kb=7.4),
    _mk("ryde192-hyp-fast", 0x0202, 192, _CODES_Q2[192], 32, 1, 44, kb=16.4),
    _mk("ryde256-hyp-fast", 0x0203, 256, _CODES_Q2[256], 32, 1, 58, kb=29.1),
    _mk("ryde128-thr-l3", 0x0301, 128, (256, 11, 12, 5, 5), 256, 2, 6, THRESHOLD, 3, kb=8.2),
    _mk("ryde192-thr-l3", 0x0302, 192, (256, 13, 17, 7, 6), 256, 1, 11, THRESHOLD, 3, kb=18.3),
    _mk("ryde256-thr-l3", 0x0303, 256, (256, 17, 17, 7, 7), 256, 3, 14, THRESHOLD, 3, kb=32.5),
    _mk("ryde128-thr-l1", 0x0401, 128, _CODES_Q2[128], 256, 2, 18, THRESHOLD, 1, False, 9.3),
    _mk("ryde192-thr-l1", 0x0402, 192, _CODES_Q2[192], 256, 2, 27, THRESHOLD, 1, False, 21.4),
    _mk("ryde256-thr-l1", 0x0403, 256, _CODES_Q2[256], 256, 2, 35, THRESHOLD, 1, False, 34.8),
]:
    PARAMS[_p.name] = _p

BY_PID = {p.pid: p for p in PARAMS.values()}

LEVELS = {"I": 128, "III": 192, "V": 256}


def get_params(name):
    try:
        return PARAMS[name]
    except KeyError:
        raise KeyError("unknown parameter set %r (known: %s)" % (name, ", ".join(PARAMS))) from None


def toy_params(q=2, m=7, n=6, k=3, r=2, N=4, eta=1, tau=2, variant=HYPERCUBE, ell=0, lam=128,
               name="toy"):
    """Small parameter sets for tests and demos (pid 0 = unregistered)."""
    return RankSdParams(name, 0, lam, q, m, n, k, r, N, eta, tau, variant, ell)
