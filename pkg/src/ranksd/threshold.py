"""Threshold variant: (ell+1, N) Shamir sharing over F_256, Merkle commitments.

Only the ell+1 parties of S = {1..ell+1} run the MPC.  The verifier opens the
ell parties in I, receives alpha of i* = min(S \\ I), and interpolates the
rest of S.

Wire format (bytes, all fields byte aligned since q = 256):
    salt || h1 || h2 || for each e: ell states (x_B, beta, a, c) in ascending
    party order || Merkle authentication path || alpha_{i*}
"""
from dataclasses import dataclass
from typing import List

import numpy as np

from .encoding import BitReader, BitWriter
from .mpc import WitnessBundle, MpcChallenge, inner_alpha_beta, party_alpha, party_v
from .params import THRESHOLD
from .shamir import INF, party_points, eval_rows, interpolation_matrix, apply_matrix
from .symmetric import Symmetric, DOM_SHARE_RAND, DOM_SIGN_RAND, be16, merkle_path_len, par_map

FIELDS = ("x_B", "beta", "a", "c")


@dataclass
class ThresholdResponse:
    states: WitnessBundle   # ell opened parties, ascending
    path: List[bytes]
    alpha: np.ndarray       # alpha share of i*


@dataclass
class ThresholdSignature:
    salt: bytes
    h1: bytes
    h2: bytes
    responses: List[ThresholdResponse]


class Threshold:
    def __init__(self, params, threads=1):
        if params.variant != THRESHOLD:
            raise ValueError("not a threshold parameter set")
        if not params.signing or params.q != 256:
            raise ValueError("threshold signing is implemented for q = 256 only")
        self.p = params
        self.threads = threads
        self.T = params.tower
        self.sym = Symmetric(params.lam)
        self.points = party_points(params.N, params.q)
        self.S = list(range(1, params.ell + 2))
        ell = params.ell
        self._rows = eval_rows(self.T.Fq, self.points, ell)                      # (N, ell+1)
        self._rec_S = interpolation_matrix(self.T.Fq, self._pts(self.S), [0], ell)[0]

    def _pts(self, parties):
        return [self.points[i - 1] for i in parties]

    def _delta(self, parties):
        # shares of a public constant: the constant itself, 0 at infinity
        return np.array([0 if self.points[i - 1] == INF else 1 for i in parties], dtype=np.uint8)

    # -- sharing ----------------------------------------------------------------

    def deal(self, sk, salt, e, root):
        """Shares (N, ...) of x_B, beta, a, c = -<a, beta> for repetition e."""
        p, T = self.p, self.T
        Fm, Fe = T.Fqm, T.Fqme
        xof = self.sym.xof(DOM_SHARE_RAND, salt, be16(e), root)
        a = xof.read_elems(Fe, p.r - 1)
        c = inner_alpha_beta(T, a, sk.beta)   # char 2: -<a, beta> = <a, beta>
        ell = p.ell
        secrets = {"x_B": (Fm, sk.x_B), "beta": (Fm, sk.beta), "a": (Fe, a), "c": (Fe, c)}
        out = {}
        for f in FIELDS:
            F, s = secrets[f]
            coeffs = xof.read_elems(F, (ell,) + s.shape[:s.ndim - F.elem_ndim])
            poly = np.concatenate([s[None], coeffs], axis=0)
            out[f] = apply_matrix(T.Fq, self._rows, poly)
        return WitnessBundle(out["x_B"], out["beta"], out["a"], out["c"])

    @staticmethod
    def state_bytes(shares, i):
        # q = 256: element encodings are the raw coefficient bytes
        return b"".join(np.ascontiguousarray(getattr(shares, f)[i - 1]).tobytes() for f in FIELDS)

    def commit_repetition(self, sk, salt, e, root):
        sh = self.deal(sk, salt, e, root)
        cmts = [self.sym.commit(salt, e, i, self.state_bytes(sh, i)) for i in range(1, self.p.N + 1)]
        tree = self.sym.merkle_tree(cmts)
        return sh, cmts, tree

    # -- signing ----------------------------------------------------------------

    def _randomness(self, sk, msg, rand):
        p = self.p
        xof = self.sym.xof(DOM_SIGN_RAND, sk.seed_sk, rand, msg)
        return xof.read(p.salt_bytes), [xof.read(p.seed_bytes) for _ in range(p.tau)]

    def _mpc_digest_payload(self, alpha_S, v_S):
        Fe = self.T.Fqme
        w = BitWriter()
        for e in range(alpha_S.shape[0]):
            for j in range(len(self.S)):
                w.write_elems(Fe, alpha_S[e, j]).write_elems(Fe, v_S[e, j])
        return w.getvalue()

    def sign(self, sk, pk, msg, rand=b""):
        p, T, sym = self.p, self.T, self.sym
        Fe = T.Fqme
        salt, roots = self._randomness(sk, msg, rand)
        reps = par_map(lambda e: self.commit_repetition(sk, salt, e, roots[e]), range(p.tau), self.threads)
        pkb = pk.to_bytes()
        h1 = sym.hash(1, msg, pkb, salt, *[tree[1] for _, _, tree in reps])
        gamma, eps = sym.expand_challenge1(h1, Fe, p.n, p.tau)
        ch = MpcChallenge(gamma[:, None], eps[:, None])
        sel = np.array(self.S) - 1
        comp = WitnessBundle(*[np.stack([getattr(sh, f)[sel] for sh, _, _ in reps]) for f in FIELDS])
        al, z = party_alpha(T, pk.H, pk.y, comp, ch, self._delta(self.S)[None], p.r)
        alpha = self._reconstruct(al, self._rec_S)
        v = party_v(T, comp, ch, z, alpha[:, None])
        h2 = sym.hash(2, msg, pkb, salt, h1, self._mpc_digest_payload(al, v))
        subsets = sym.expand_challenge2_threshold(h2, p.N, p.ell, p.tau)
        responses = []
        for e, (sh, cmts, tree) in enumerate(reps):
            I = subsets[e]
            i_star = min(set(self.S) - set(I))
            states = sh.map(lambda v_: v_[np.array(I) - 1])
            path = sym.merkle_auth(tree, I)
            responses.append(ThresholdResponse(states, path, al[e, i_star - 1]))
        return ThresholdSignature(salt, h1, h2, responses)

    def _reconstruct(self, vals, row):
        """sum_j row[j] vals[:, j] over the party axis (axis 1)."""
        Fq = self.T.Fq
        moved = np.moveaxis(vals, 1, 0)
        return apply_matrix(Fq, row[None], moved)[0]

    # -- verification ---------------------------------------------------------

    def verify(self, pk, msg, sig):
        p, T, sym = self.p, self.T, self.sym
        Fe = T.Fqme
        if isinstance(sig, (bytes, bytearray)):
            try:
                sig = self.decode(sig)
            except ValueError:
                return False
        pkb = pk.to_bytes()
        subsets = sym.expand_challenge2_threshold(sig.h2, p.N, p.ell, p.tau)
        roots = []
        try:
            for e, (I, rsp) in enumerate(zip(subsets, sig.responses)):
                cm = [sym.commit(sig.salt, e, i, self.state_bytes(rsp.states, j + 1))
                      for j, i in enumerate(I)]
                roots.append(sym.merkle_verify(p.N, cm, rsp.path, I))
        except ValueError:
            return False
        if sym.hash(1, msg, pkb, sig.salt, *roots) != sig.h1:
            return False
        gamma, eps = sym.expand_challenge1(sig.h1, Fe, p.n, p.tau)
        ch = MpcChallenge(gamma[:, None], eps[:, None])
        states = WitnessBundle(*[np.stack([getattr(r.states, f) for r in sig.responses]) for f in FIELDS])
        delta = np.stack([self._delta(I) for I in subsets])
        al_I, z_I = party_alpha(T, pk.H, pk.y, states, ch, delta, p.r)      # (tau, ell, ...)
        alpha_S, alpha = [], []
        for e, I in enumerate(subsets):
            i_star = min(set(self.S) - set(I))
            J = list(I) + [i_star]
            vals = np.concatenate([al_I[e], sig.responses[e].alpha[None]], axis=0)
            W = interpolation_matrix(T.Fq, self._pts(J), [0] + self._pts(self.S), p.ell)
            out = apply_matrix(T.Fq, W, vals)
            alpha.append(out[0])
            alpha_S.append(out[1:])
        alpha = np.stack(alpha)
        alpha_S = np.stack(alpha_S)
        v_I = party_v(T, states, ch, z_I, alpha[:, None])
        v_S = []
        for e, I in enumerate(subsets):
            W = interpolation_matrix(T.Fq, self._pts(I) + [0], self._pts(self.S), p.ell)
            vals = np.concatenate([v_I[e], Fe.zeros((1,))], axis=0)
            v_S.append(apply_matrix(T.Fq, W, vals))
        v_S = np.stack(v_S)
        h2 = sym.hash(2, msg, pkb, sig.salt, sig.h1, self._mpc_digest_payload(alpha_S, v_S))
        return h2 == sig.h2

    # -- wire format ------------------------------------------------------------

    def encode(self, sig):
        T = self.T
        w = BitWriter()
        w.write_bytes(sig.salt).write_bytes(sig.h1).write_bytes(sig.h2)
        for rsp in sig.responses:
            for j in range(self.p.ell):
                w.write_elems(T.Fqm, rsp.states.x_B[j]).write_elems(T.Fqm, rsp.states.beta[j])
                w.write_elems(T.Fqme, rsp.states.a[j]).write_elems(T.Fqme, rsp.states.c[j])
            for d in rsp.path:
                w.write_bytes(d)
            w.write_elems(T.Fqme, rsp.alpha)
        return w.getvalue()

    def decode(self, data):
        p, T = self.p, self.T
        rd = BitReader(data)
        salt = rd.read_bytes(p.salt_bytes)
        h1 = rd.read_bytes(p.digest_bytes)
        h2 = rd.read_bytes(p.digest_bytes)
        subsets = self.sym.expand_challenge2_threshold(h2, p.N, p.ell, p.tau)
        responses = []
        for I in subsets:
            cols = {f: [] for f in FIELDS}
            for _ in range(p.ell):
                cols["x_B"].append(rd.read_elems(T.Fqm, p.k))
                cols["beta"].append(rd.read_elems(T.Fqm, p.r - 1))
                cols["a"].append(rd.read_elems(T.Fqme, p.r - 1))
                cols["c"].append(rd.read_elems(T.Fqme, 1)[0])
            states = WitnessBundle(*[np.stack(cols[f]) for f in FIELDS])
            path = [rd.read_bytes(p.digest_bytes) for _ in range(merkle_path_len(p.N, I))]
            alpha = rd.read_elems(T.Fqme, p.r - 1)
            responses.append(ThresholdResponse(states, path, alpha))
        rd.finish()
        return ThresholdSignature(salt, h1, h2, responses)

    def size_bits(self, subsets):
        """Exact wire size in bits for the given opened sets."""
        p = self.p
        state = (p.k * p.m + (p.r - 1) * p.m + p.r * p.m * p.eta) * p.log2q
        bits = 6 * p.lam
        for I in subsets:
            bits += p.ell * state + 2 * p.lam * merkle_path_len(p.N, I) + (p.r - 1) * p.m * p.eta * p.log2q
        return bits

    def worst_case_bits(self):
        """Largest possible wire size: every repetition's path at its maximum."""
        p = self.p
        worst = _max_path_len(p.N, p.ell)
        state = (p.k * p.m + (p.r - 1) * p.m + p.r * p.m * p.eta) * p.log2q
        per = p.ell * state + 2 * p.lam * worst + (p.r - 1) * p.m * p.eta * p.log2q
        return 6 * p.lam + p.tau * per


def _max_path_len(N, ell):
    """Max authentication path length over ell-subsets of N = 2^D leaves.

    With a_t distinct ancestors at depth t the path needs 2 a_{t-1} - a_t
    siblings at depth t; spreading the leaves maximises every a_t."""
    D = N.bit_length() - 1
    return sum(2 * min(2 ** (t - 1), ell) - min(2 ** t, ell) for t in range(1, D + 1))
