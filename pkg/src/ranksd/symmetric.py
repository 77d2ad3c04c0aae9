"""Hashes, commitments, GGM seed trees, Merkle trees and challenge expansion.

Every call is XOF(domain byte || payload) with SHAKE128 at lambda = 128 and
SHAKE256 above.  Domain bytes:

    0..4  hash_0 .. hash_4 (random oracles H_0 .. H_4)
    5     Merkle leaf         6   Merkle node        7   GGM derivation
    8     leaf share PRG      9   secret-key expansion
    10    H' expansion        11  first challenge    12  second challenge
    13    signing randomness  14  threshold sharing randomness
"""
import hashlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np

DOM_MERKLE_LEAF = 5
DOM_MERKLE_NODE = 6
DOM_GGM = 7
DOM_LEAF_PRG = 8
DOM_SK = 9
DOM_H = 10
DOM_CH1 = 11
DOM_CH2 = 12
DOM_SIGN_RAND = 13
DOM_SHARE_RAND = 14

LEAF_FLAG = 0x80000000


def be16(i):
    return int(i).to_bytes(2, "big")


def be32(i):
    return int(i).to_bytes(4, "big")


_DOM = [bytes([i]) for i in range(256)]


class Xof:
    """Sequential reader over a SHAKE output."""

    def __init__(self, h):
        self._h = h
        self._buf = b""
        self.pos = 0

    def read(self, n):
        end = self.pos + n
        if end > len(self._buf):
            self._buf = self._h.digest(max(end, 2 * len(self._buf), 64))
        out = self._buf[self.pos:end]
        self.pos = end
        return out

    def read_elems(self, F, shape):
        """Uniform field elements from consecutive little-endian bits."""
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        count = int(np.prod(shape, dtype=np.int64))
        nbits = count * F.bits
        # whole bytes per call, leftover bits of the last byte are dropped
        data = self.read((nbits + 7) // 8)
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")[:nbits]
        return F.from_bits(bits.reshape(shape + (F.bits,)))


class Symmetric:
    def __init__(self, lam):
        self.lam = lam
        self.seed_bytes = lam // 8
        self.digest_bytes = lam // 4
        self._ctor = hashlib.shake_128 if lam <= 128 else hashlib.shake_256

    def _shake(self, domain, parts):
        return self._ctor(_DOM[domain] + b"".join(parts))

    def xof(self, domain, *parts):
        return Xof(self._shake(domain, parts))

    def digest(self, domain, *parts, nbytes=None):
        return self._shake(domain, parts).digest(nbytes or self.digest_bytes)

    def hash(self, i, *parts):
        if i not in range(5):
            raise ValueError("hash index must be in 0..4")
        return self.digest(i, *parts)

    def commit(self, salt, e, i, state, rho=b""):
        return self.digest(0, salt, be16(e), be16(i), state, rho)

    # -- GGM tree ------------------------------------------------------------

    def ggm_expand(self, root, salt, N):
        """Heap-ordered node seeds (index 1..2N-1) and the N leaf outputs
        (seed_i, rho_i)."""
        if N < 1 or N & (N - 1):
            raise ValueError("N must be a power of two")
        sb = self.seed_bytes
        nodes = [None] * (2 * N)
        nodes[1] = bytes(root)
        for v in range(1, N):
            nodes[2 * v] = self.digest(DOM_GGM, salt, be32(2 * v), nodes[v], nbytes=sb)
            nodes[2 * v + 1] = self.digest(DOM_GGM, salt, be32(2 * v + 1), nodes[v], nbytes=sb)
        leaves = [self._leaf(salt, N + i, nodes[N + i]) for i in range(N)]
        return nodes, leaves

    def _leaf(self, salt, node, seed):
        out = self.digest(DOM_GGM, salt, be32(LEAF_FLAG | node), seed, nbytes=2 * self.seed_bytes)
        return out[:self.seed_bytes], out[self.seed_bytes:]

    @staticmethod
    def ggm_open(nodes, N, i_star):
        """Sibling path hiding leaf i_star (1-based), listed top-down."""
        if not 1 <= i_star <= N:
            raise ValueError("hidden index out of range")
        v = N + i_star - 1
        path = []
        while v > 1:
            path.append(nodes[v ^ 1])
            v >>= 1
        return path[::-1]

    def ggm_recover(self, path, salt, N, i_star):
        """All leaf outputs except leaf i_star (returned as None)."""
        D = N.bit_length() - 1
        if len(path) != D:
            raise ValueError("path must hold log2(N) seeds")
        if not 1 <= i_star <= N:
            raise ValueError("hidden index out of range")
        sb = self.seed_bytes
        target = N + i_star - 1
        leaves = [None] * N
        for depth, seed in enumerate(path, start=1):
            if len(seed) != sb:
                raise ValueError("bad seed length")
            # sibling of the ancestor of target at this depth
            sib = (target >> (D - depth)) ^ 1
            stack = [(sib, bytes(seed))]
            while stack:
                v, s = stack.pop()
                if v >= N:
                    leaves[v - N] = self._leaf(salt, v, s)
                    continue
                stack.append((2 * v, self.digest(DOM_GGM, salt, be32(2 * v), s, nbytes=sb)))
                stack.append((2 * v + 1, self.digest(DOM_GGM, salt, be32(2 * v + 1), s, nbytes=sb)))
        return leaves

    # -- Merkle tree ---------------------------------------------------------

    def merkle_tree(self, leaves):
        N = len(leaves)
        if N < 1 or N & (N - 1):
            raise ValueError("leaf count must be a power of two")
        nodes = [None] * (2 * N)
        for i, v in enumerate(leaves):
            nodes[N + i] = self.digest(DOM_MERKLE_LEAF, v)
        for v in range(N - 1, 0, -1):
            nodes[v] = self.digest(DOM_MERKLE_NODE, nodes[2 * v], nodes[2 * v + 1])
        return nodes

    def merkle_root(self, leaves):
        return self.merkle_tree(leaves)[1]

    @staticmethod
    def merkle_auth(nodes, I):
        """Authentication path for the 1-based leaf set I: the missing
        siblings, bottom-up, by ascending node index within a level."""
        N = len(nodes) // 2
        known = sorted({N + i - 1 for i in I})
        path = []
        while known != [1]:
            nxt = []
            for v in known:
                if v ^ 1 not in known:
                    path.append(nodes[v ^ 1])
                nxt.append(v >> 1)
            known = sorted(set(nxt))
        return path

    def merkle_verify(self, N, leaves_I, path, I):
        """Root recomputed from the leaves in I (dict or aligned list) and the
        authentication path; raises ValueError on a malformed path."""
        if isinstance(leaves_I, dict):
            vals = {N + i - 1: self.digest(DOM_MERKLE_LEAF, leaves_I[i]) for i in I}
        else:
            vals = {N + i - 1: self.digest(DOM_MERKLE_LEAF, v) for i, v in zip(I, leaves_I)}
        it = iter(path)
        known = sorted(vals)
        try:
            while known != [1]:
                for v in known:
                    if v ^ 1 not in vals:
                        vals[v ^ 1] = next(it)
                nxt = sorted({v >> 1 for v in known})
                for p in nxt:
                    vals[p] = self.digest(DOM_MERKLE_NODE, vals[2 * p], vals[2 * p + 1])
                known = nxt
        except StopIteration:
            raise ValueError("authentication path too short") from None
        if next(it, None) is not None:
            raise ValueError("authentication path too long")
        return vals[1]

    # -- challenges ----------------------------------------------------------

    def expand_challenge1(self, h1, F, n, tau):
        """gamma (tau, n) and epsilon (tau,) in F, drawn e-major."""
        x = self.xof(DOM_CH1, h1).read_elems(F, (tau, n + 1))
        gamma = x[:, :n]
        eps = x[:, n]
        return gamma, eps

    def expand_challenge2_hypercube(self, h2, N, tau):
        if N > 256:
            raise ValueError("N > 256 unsupported")
        data = self.xof(DOM_CH2, h2).read(tau)
        return [(b & (N - 1)) + 1 for b in data]

    def expand_challenge2_threshold(self, h2, N, ell, tau):
        """Per repetition a sorted ell-subset of 1..N via a partial
        Fisher-Yates shuffle driven by rejection-sampled bytes."""
        if N > 256:
            raise ValueError("N > 256 unsupported")
        xof = self.xof(DOM_CH2, h2)
        out = []
        for _ in range(tau):
            perm = list(range(1, N + 1))
            for j in range(ell):
                size = N - j
                limit = 256 - 256 % size
                while True:
                    b = xof.read(1)[0]
                    if b < limit:
                        break
                t = j + b % size
                perm[j], perm[t] = perm[t], perm[j]
            out.append(sorted(perm[:ell]))
        return out


def merkle_path_len(N, I):
    """Number of digests in the authentication path for leaf set I."""
    known = sorted({N + i - 1 for i in I})
    count = 0
    while known != [1]:
        count += sum(1 for v in known if v ^ 1 not in known)
        known = sorted({v >> 1 for v in known})
    return count


def par_map(fn, items, threads=1):
    """list(map(fn, items)), on a thread pool when threads > 1."""
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))
