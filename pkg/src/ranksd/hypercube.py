"""Hypercube variant: additive GGM leaf shares, D two-party main executions.

Leaf i (1-based) has coordinate i_d = bit (d-1) of (i-1), plus one, along
dimension d; main party (d, k) is the sum of the leaves with i_d = k.  Leaf N
sits in party (d, 2) for every d and carries the affine constant (delta = 1)
and the auxiliary shares fixing the sums of x_B, beta and c.

Wire format (one little-endian bitstream, zero padded to a byte):
    salt || h1 || h2 || for each e: path (D seeds) || cmt_{i*} || alpha_{i*}
    [|| x_B,N || beta_N || c_N   when i* != N]
"""
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .encoding import BitReader, BitWriter
from .mpc import WitnessBundle, MpcChallenge, bundle_sum, inner_alpha_beta, party_alpha, party_v
from .params import HYPERCUBE
from .symmetric import Symmetric, DOM_LEAF_PRG, DOM_SIGN_RAND, be16, par_map


@dataclass
class Response:
    path: List[bytes]
    cmt: bytes
    alpha: np.ndarray
    aux: Optional[WitnessBundle] = None  # x_B, beta, c of leaf N (a unused)


@dataclass
class HypercubeSignature:
    salt: bytes
    h1: bytes
    h2: bytes
    responses: List[Response]


@dataclass
class Repetition:
    """Prover state of one repetition after the commitment round."""
    e: int
    nodes: list
    leaves: list
    shares: WitnessBundle   # (N, ...) with leaf N holding its aux shares
    aux_bytes: bytes
    cmts: List[bytes]
    h0: bytes


@dataclass
class Transcript:
    """Output of the zero-knowledge simulator."""
    salt: bytes
    h0: List[bytes]
    ch: MpcChallenge
    main: List[List[bytes]]   # H_d digests per repetition
    i_star: List[int]
    responses: List[Response]


def leaf_coord(i, d):
    return ((i - 1) >> (d - 1)) & 1


class Hypercube:
    def __init__(self, params, threads=1):
        if params.variant != HYPERCUBE:
            raise ValueError("not a hypercube parameter set")
        if params.N < 2:
            raise ValueError("the hypercube needs at least one dimension (N >= 2)")
        self.p = params
        self.threads = threads
        self.T = params.tower
        self.sym = Symmetric(params.lam)
        p, T = params, self.T
        # leaf PRG layout: a, x_B, beta, c
        self._layout = [("a", T.Fqme, p.r - 1), ("x_B", T.Fqm, p.k),
                        ("beta", T.Fqm, p.r - 1), ("c", T.Fqme, 1)]
        self._prg_bytes = (sum(F.bits * c for _, F, c in self._layout) + 7) // 8
        N = p.N
        idx = np.arange(N)
        # (D, N) membership masks of party (d, 1)
        self._in_first = np.stack([((idx >> d) & 1) == 0 for d in range(p.D)])

    # -- shares ---------------------------------------------------------------

    def expand_leaves(self, salt, seeds):
        """PRG shares for a list of leaf seeds -> bundle with batch (len,)."""
        buf = np.frombuffer(b"".join(self.sym.digest(DOM_LEAF_PRG, salt, s, nbytes=self._prg_bytes)
                                     for s in seeds), dtype=np.uint8)
        bits = np.unpackbits(buf.reshape(len(seeds), -1), axis=1, bitorder="little")
        out, pos = {}, 0
        for name, F, cnt in self._layout:
            nb = F.bits * cnt
            out[name] = F.from_bits(bits[:, pos:pos + nb].reshape(len(seeds), cnt, F.bits))
            pos += nb
        c = out["c"][:, 0]
        return WitnessBundle(out["x_B"], out["beta"], out["a"], c)

    def aux_to_bytes(self, aux):
        w = BitWriter()
        w.write_elems(self.T.Fqm, aux.x_B).write_elems(self.T.Fqm, aux.beta)
        w.write_elems(self.T.Fqme, aux.c)
        return w.getvalue()

    def _state(self, i, leaves, aux_bytes):
        seed, rho = leaves[i - 1]
        if i == self.p.N:
            return seed + aux_bytes, rho
        return seed, rho

    def commit_repetition(self, sk, salt, e, root):
        """GGM expansion, leaf shares, aux of leaf N, commitments and h0."""
        p, T, sym = self.p, self.T, self.sym
        Fm, Fe = T.Fqm, T.Fqme
        nodes, leaves = sym.ggm_expand(root, salt, p.N)
        sh = self.expand_leaves(salt, [s for s, _ in leaves])
        # sum constraints fix leaf N
        a_tot = Fe.sum(sh.a, 0)
        c_tot = inner_alpha_beta(T, a_tot, sk.beta)         # c = -<a, beta>
        rest = bundle_sum(T, sh.map(lambda v: v[:-1]), 0)
        sh.x_B[-1] = Fm.sub(sk.x_B, rest.x_B)
        sh.beta[-1] = Fm.sub(sk.beta, rest.beta)
        sh.c[-1] = Fe.sub(c_tot, rest.c)
        aux_b = self.aux_to_bytes(WitnessBundle(sh.x_B[-1], sh.beta[-1], None, sh.c[-1]))
        cmts = []
        for i in range(1, p.N + 1):
            state, rho = self._state(i, leaves, aux_b)
            cmts.append(sym.commit(salt, e, i, state, rho))
        h0 = sym.hash(1, salt, be16(e), *cmts)
        return Repetition(e, nodes, leaves, sh, aux_b, cmts, h0)

    def main_shares(self, shares):
        """(..., N) leaf bundle -> (..., D, 2) main party bundle."""
        T = self.T
        Fm, Fe = T.Fqm, T.Fqme

        out = {}
        for name, F in (("x_B", Fm), ("beta", Fm), ("a", Fe), ("c", Fe)):
            v = getattr(shares, name)
            ent = 1 if name != "c" else 0           # entry axes after the leaf axis
            leaf_ax = v.ndim - F.elem_ndim - ent - 1
            parts = []
            for d in range(self.p.D):
                m1 = self._in_first[d]
                s1 = F.sum(np.compress(m1, v, axis=leaf_ax), leaf_ax)
                s2 = F.sum(np.compress(~m1, v, axis=leaf_ax), leaf_ax)
                parts.append(np.stack([s1, s2], axis=leaf_ax))
            out[name] = np.stack(parts, axis=leaf_ax)
        return WitnessBundle(out["x_B"], out["beta"], out["a"], out["c"])

    def _encode_main(self, a1, v1, a2, v2):
        Fe = self.T.Fqme
        w = BitWriter()
        for x in (a1, v1, a2, v2):
            w.write_elems(Fe, x)
        return self.sym.hash(3, w.getvalue())

    # -- signing ----------------------------------------------------------------

    def _randomness(self, sk, msg, rand):
        p = self.p
        xof = self.sym.xof(DOM_SIGN_RAND, sk.seed_sk, rand, msg)
        salt = xof.read(p.salt_bytes)
        roots = [xof.read(p.seed_bytes) for _ in range(p.tau)]
        return salt, roots

    def sign(self, sk, pk, msg, rand=b""):
        p, T, sym = self.p, self.T, self.sym
        Fe = T.Fqme
        N, tau = p.N, p.tau
        salt, roots = self._randomness(sk, msg, rand)
        reps = par_map(lambda e: self.commit_repetition(sk, salt, e, roots[e]), range(tau), self.threads)
        h1 = sym.hash(2, salt, msg, *[rp.h0 for rp in reps])
        gamma, eps = sym.expand_challenge1(h1, Fe, p.n, tau)

        leaf = WitnessBundle(*[np.stack([getattr(rp.shares, f) for rp in reps])
                               for f in ("x_B", "beta", "a", "c")])
        _, digests = self.main_digests(pk, leaf, MpcChallenge(gamma, eps))
        h2 = sym.hash(4, msg, pk.to_bytes(), salt, h1, *[h for row in digests for h in row])
        i_stars = sym.expand_challenge2_hypercube(h2, N, tau)
        responses = [self.respond(pk, reps[e], i_stars[e], MpcChallenge(gamma[e], eps[e]))
                     for e in range(tau)]
        return HypercubeSignature(salt, h1, h2, responses)

    def main_digests(self, pk, leaf, ch):
        """Prover side: (alpha, H_d digests) from (tau, N) leaf shares."""
        p, T = self.p, self.T
        Fe = T.Fqme
        D = p.D
        main = self.main_shares(leaf)  # (tau, D, 2, ...)
        # computed parties: (1,1), (1,2), then (d,1) for d >= 2
        sel_d = [0, 0] + list(range(1, D))
        sel_k = [0, 1] + [0] * (D - 1)
        comp = main.map(lambda v: v[:, sel_d, sel_k])
        delta = np.array(sel_k, dtype=np.uint8)[None, :]
        chb = MpcChallenge(ch.gamma[:, None], ch.eps[:, None])
        al_c, z_c = party_alpha(T, pk.H, pk.y, comp, chb, delta, p.r)
        alpha = Fe.add(al_c[:, 0], al_c[:, 1])
        v_c = party_v(T, comp, chb, z_c, alpha[:, None])
        digests = []
        for e in range(alpha.shape[0]):
            row = []
            for d in range(D):
                j = 0 if d == 0 else d + 1
                a1, v1 = al_c[e, j], v_c[e, j]
                a2 = Fe.sub(alpha[e], a1)
                v2 = v_c[e, 1] if d == 0 else Fe.neg(v1)
                row.append(self._encode_main(a1, v1, a2, v2))
            digests.append(row)
        return alpha, digests

    def respond(self, pk, rep, i_star, ch_e, shares=None):
        """Response hiding leaf i_star; shares overrides the leaf shares used
        for alpha_{i*} (cheating provers in tests)."""
        p, T = self.p, self.T
        sh = shares or rep.shares
        one = sh.map(lambda v: v[i_star - 1])
        alpha, _ = party_alpha(T, pk.H, pk.y, one, ch_e, int(i_star == p.N), p.r)
        path = self.sym.ggm_open(rep.nodes, p.N, i_star)
        aux = None
        if i_star != p.N:
            aux = rep.shares.map(lambda v: v[-1])
        return Response(path, rep.cmts[i_star - 1], alpha, aux)

    # -- verification ---------------------------------------------------------

    def recompute(self, pk, salt, es, i_stars, responses, ch):
        """Verifier-side h0 and H_d digests for repetitions es with hidden
        leaves i_stars; ch holds the matching (gamma, eps) batch."""
        p, T, sym = self.p, self.T, self.sym
        Fm, Fe = T.Fqm, T.Fqme
        N, D = p.N, p.D
        h0s, leaf_list = [], []
        for e, i_star, rsp in zip(es, i_stars, responses):
            leaves = sym.ggm_recover(rsp.path, salt, N, i_star)
            open_idx = [i for i in range(1, N + 1) if i != i_star]
            sh = self.expand_leaves(salt, [leaves[i - 1][0] for i in open_idx])
            full = WitnessBundle(Fm.zeros((N, p.k)), Fm.zeros((N, p.r - 1)),
                                 Fe.zeros((N, p.r - 1)), Fe.zeros((N,)))
            pos = np.array(open_idx) - 1
            for f in ("x_B", "beta", "a", "c"):
                getattr(full, f)[pos] = getattr(sh, f)
            aux_b = b""
            if i_star != N:
                aux = rsp.aux
                full.x_B[N - 1], full.beta[N - 1], full.c[N - 1] = aux.x_B, aux.beta, aux.c
                aux_b = self.aux_to_bytes(aux)
            cmts = []
            for i in range(1, N + 1):
                if i == i_star:
                    cmts.append(rsp.cmt)
                else:
                    state, rho = self._state(i, leaves, aux_b)
                    cmts.append(sym.commit(salt, e, i, state, rho))
            h0s.append(sym.hash(1, salt, be16(e), *cmts))
            leaf_list.append(full)
        R = len(es)
        leaf = WitnessBundle(*[np.stack([getattr(b, f) for b in leaf_list])
                               for f in ("x_B", "beta", "a", "c")])
        main = self.main_shares(leaf)                    # (R, D, 2, ...)
        ist = np.array(i_stars)
        kstar = np.stack([((ist - 1) >> d) & 1 for d in range(D)], axis=1)  # hidden party
        other = 1 - kstar
        rows = np.arange(R)[:, None]
        dims = np.arange(D)[None, :]
        opened = main.map(lambda v: v[rows, dims, other])  # (R, D, ...)
        partial = bundle_sum(T, leaf, 1)                    # (R, ...)
        comp = WitnessBundle(*[np.concatenate([getattr(partial, f)[:, None], getattr(opened, f)], axis=1)
                               for f in ("x_B", "beta", "a", "c")])
        delta = np.concatenate([(ist != N)[:, None], other == 1], axis=1).astype(np.uint8)
        chb = MpcChallenge(ch.gamma[:, None], ch.eps[:, None])
        al_c, z_c = party_alpha(T, pk.H, pk.y, comp, chb, delta, p.r)
        alpha = Fe.add(al_c[:, 0], np.stack([rsp.alpha for rsp in responses]))
        ocomp = comp.map(lambda v: v[:, 1:])
        v_o = party_v(T, ocomp, MpcChallenge(ch.gamma[:, None], ch.eps[:, None]),
                      z_c[:, 1:], alpha[:, None])
        digests = []
        for t in range(R):
            row = []
            for d in range(D):
                a_o, v_oo = al_c[t, d + 1], v_o[t, d]
                a_h, v_h = Fe.sub(alpha[t], a_o), Fe.neg(v_oo)
                if other[t, d] == 1:
                    row.append(self._encode_main(a_h, v_h, a_o, v_oo))
                else:
                    row.append(self._encode_main(a_o, v_oo, a_h, v_h))
            digests.append(row)
        return h0s, digests

    def verify(self, pk, msg, sig):
        p, sym = self.p, self.sym
        Fe = self.T.Fqme
        if isinstance(sig, (bytes, bytearray)):
            try:
                sig = self.decode(sig)
            except ValueError:
                return False
        i_stars = sym.expand_challenge2_hypercube(sig.h2, p.N, p.tau)
        gamma, eps = sym.expand_challenge1(sig.h1, Fe, p.n, p.tau)
        try:
            h0s, digests = self.recompute(pk, sig.salt, list(range(p.tau)), i_stars, sig.responses,
                                          MpcChallenge(gamma, eps))
        except (ValueError, TypeError, AttributeError):
            return False
        if sym.hash(2, sig.salt, msg, *h0s) != sig.h1:
            return False
        h2 = sym.hash(4, msg, pk.to_bytes(), sig.salt, sig.h1, *[h for row in digests for h in row])
        return h2 == sig.h2

    # -- wire format ------------------------------------------------------------

    def encode(self, sig):
        T = self.T
        w = BitWriter()
        w.write_bytes(sig.salt).write_bytes(sig.h1).write_bytes(sig.h2)
        for rsp in sig.responses:
            for s in rsp.path:
                w.write_bytes(s)
            w.write_bytes(rsp.cmt)
            w.write_elems(T.Fqme, rsp.alpha)
            if rsp.aux is not None:
                w.write_elems(T.Fqm, rsp.aux.x_B).write_elems(T.Fqm, rsp.aux.beta)
                w.write_elems(T.Fqme, rsp.aux.c)
        return w.getvalue()

    def decode(self, data):
        T, p = self.T, self.p
        rd = BitReader(data)
        salt = rd.read_bytes(p.salt_bytes)
        h1 = rd.read_bytes(p.digest_bytes)
        h2 = rd.read_bytes(p.digest_bytes)
        i_stars = self.sym.expand_challenge2_hypercube(h2, p.N, p.tau)
        responses = []
        for e in range(p.tau):
            path = [rd.read_bytes(p.seed_bytes) for _ in range(p.D)]
            cmt = rd.read_bytes(p.digest_bytes)
            alpha = rd.read_elems(T.Fqme, p.r - 1)
            aux = None
            if i_stars[e] != p.N:
                x_B = rd.read_elems(T.Fqm, p.k)
                beta = rd.read_elems(T.Fqm, p.r - 1)
                c = rd.read_elems(T.Fqme, 1)[0]
                aux = WitnessBundle(x_B, beta, None, c)
            responses.append(Response(path, cmt, alpha, aux))
        rd.finish()
        return HypercubeSignature(salt, h1, h2, responses)

    def size_bits(self, i_stars):
        """Exact wire size in bits for the given hidden leaves (before padding)."""
        p = self.p
        qb = p.log2q
        bits = 6 * p.lam
        for i in i_stars:
            bits += p.D * p.lam + 2 * p.lam + (p.r - 1) * p.m * p.eta * qb
            if i != p.N:
                bits += (p.k * p.m + (p.r - 1) * p.m + p.m * p.eta) * qb
        return bits

    # -- zero-knowledge simulator -------------------------------------------------

    def simulate(self, pk, seed):
        """Transcript built from pk alone: challenges first, a random alpha
        share for the hidden leaf, its v share closing the sum to zero."""
        p, T, sym = self.p, self.T, self.sym
        Fm, Fe = T.Fqm, T.Fqme
        N, D, tau = p.N, p.D, p.tau
        xof = sym.xof(DOM_SIGN_RAND, b"simulator", seed)
        salt = xof.read(p.salt_bytes)
        gamma = xof.read_elems(Fe, (tau, p.n))
        eps = xof.read_elems(Fe, (tau,))
        i_stars = [(b & (N - 1)) + 1 for b in xof.read(tau)]
        h0s, mains, responses = [], [], []
        for e in range(tau):
            i_star = i_stars[e]
            ch = MpcChallenge(gamma[e], eps[e])
            nodes, leaves = sym.ggm_expand(xof.read(p.seed_bytes), salt, N)
            sh = self.expand_leaves(salt, [s for s, _ in leaves])
            aux = None
            aux_b = b""
            if i_star != N:
                aux = WitnessBundle(xof.read_elems(Fm, p.k), xof.read_elems(Fm, p.r - 1), None,
                                    xof.read_elems(Fe, 1)[0])
                sh.x_B[-1], sh.beta[-1], sh.c[-1] = aux.x_B, aux.beta, aux.c
                aux_b = self.aux_to_bytes(aux)
            cmts = []
            for i in range(1, N + 1):
                if i == i_star:
                    cmts.append(xof.read(p.digest_bytes))
                else:
                    state, rho = self._state(i, leaves, aux_b)
                    cmts.append(sym.commit(salt, e, i, state, rho))
            h0s.append(sym.hash(1, salt, be16(e), *cmts))
            alpha_hidden = xof.read_elems(Fe, p.r - 1)

            # zero the hidden leaf, then work with leaf sums (everything is linear)
            vis = sh.map(lambda v: v.copy())
            for f in ("x_B", "beta", "a", "c"):
                getattr(vis, f)[i_star - 1] = 0
            deltas = (np.arange(1, N + 1) == N) & (np.arange(1, N + 1) != i_star)

            def sums(mask):
                sub = vis.map(lambda v: v[mask])
                return bundle_sum(T, sub, 0), int(np.any(deltas[mask]))

            everyone, d_all = sums(np.ones(N, dtype=bool))
            al_all, z_all = party_alpha(T, pk.H, pk.y, everyone, ch, d_all, p.r)
            alpha = Fe.add(al_all, alpha_hidden)
            v_hidden = Fe.neg(party_v(T, everyone, ch, z_all, alpha))
            row = []
            for d in range(D):
                vals = []
                for k in (0, 1):
                    mask = self._in_first[d] if k == 0 else ~self._in_first[d]
                    s, dl = sums(mask)
                    al, z = party_alpha(T, pk.H, pk.y, s, ch, dl, p.r)
                    v = party_v(T, s, ch, z, alpha)
                    if mask[i_star - 1]:
                        al, v = Fe.add(al, alpha_hidden), Fe.add(v, v_hidden)
                    vals += [al, v]
                row.append(self._encode_main(*vals))
            mains.append(row)
            path = sym.ggm_open(nodes, N, i_star)
            responses.append(Response(path, cmts[i_star - 1], alpha_hidden, aux))
        return Transcript(salt, h0s, MpcChallenge(gamma, eps), mains, i_stars, responses)
