"""Empirical soundness at toy scale.

A prover holding a bad witness commits honestly, then patches one leaf's c
share so the MPC output looks right.  Over many runs the cheat survives the
second challenge about 1/N of the time.

    python scripts/soundness_demo.py [--N 16] [--trials 200]
"""
import argparse

import numpy as np

from ranksd import Hypercube, keygen, toy_params
from ranksd.keys import SecretKey
from ranksd.mpc import MpcChallenge, bundle_sum, party_alpha, party_v


def one_run(hc, pk, bad, rng):
    p, T = hc.p, hc.p.tower
    Fe = T.Fqme
    salt = rng.bytes(p.salt_bytes)
    rep = hc.commit_repetition(bad, salt, 0, rng.bytes(p.seed_bytes))
    gamma, eps = hc.sym.expand_challenge1(hc.sym.hash(2, salt, b"demo", rep.h0), Fe, p.n, 1)
    ch, ch_e = MpcChallenge(gamma, eps), MpcChallenge(gamma[0], eps[0])
    tot = bundle_sum(T, rep.shares, 0)
    alpha, z = party_alpha(T, pk.H, pk.y, tot, ch_e, 1, p.r)
    v_total = party_v(T, tot, ch_e, z, alpha)
    j = int(rng.integers(1, p.N + 1))
    cheat = rep.shares.map(lambda v: v.copy())
    cheat.c[j - 1] = Fe.add(cheat.c[j - 1], v_total)
    _, digests = hc.main_digests(pk, cheat.map(lambda v: v[None]), ch)
    i_star = int(rng.integers(1, p.N + 1))        # the verifier's second challenge
    rsp = hc.respond(pk, rep, i_star, ch_e, shares=cheat)
    h0s, got = hc.recompute(pk, salt, [0], [i_star], [rsp], ch)
    return h0s[0] == rep.h0 and got == digests


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=16)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    p = toy_params(N=args.N, tau=1)
    rng = np.random.default_rng(args.seed)
    hc = Hypercube(p)
    pk, sk = keygen(bytes(p.seed_bytes), p)
    Fm = p.tower.Fqm
    bad = SecretKey(p, sk.seed_sk, sk.seed_H, sk.support, sk.x, Fm.add(sk.beta, Fm.one(sk.beta.shape[:1])))
    wins = sum(one_run(hc, pk, bad, rng) for _ in range(args.trials))
    print("N = %d: cheat accepted %d / %d = %.4f (1/N = %.4f)"
          % (p.N, wins, args.trials, wins / args.trials, 1 / p.N))


if __name__ == "__main__":
    main()
