"""Time keygen / sign / verify per signing parameter set.

    python scripts/bench.py [--runs 5] [--threads 1] [--params NAME ...]
"""
import argparse
import os
import statistics
import time

from ranksd import PARAMS, get_params, keygen, scheme


def clock(fn, runs):
    out, times = None, []
    for _ in range(runs):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return out, statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=5)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--params", nargs="*", default=[n for n, p in PARAMS.items() if p.signing])
    args = ap.parse_args()
    print("%-20s %9s %9s %9s %8s" % ("set", "keygen ms", "sign ms", "verify ms", "bytes"))
    for name in args.params:
        p = get_params(name)
        s = scheme(p, args.threads)
        (pk, sk), tk = clock(lambda: keygen(os.urandom(p.seed_bytes), p), args.runs)
        sig, ts = clock(lambda: s.encode(s.sign(sk, pk, b"bench")), args.runs)
        ok, tv = clock(lambda: s.verify(pk, b"bench", sig), args.runs)
        assert ok
        print("%-20s %9.1f %9.1f %9.1f %8d" % (name, 1e3 * tk, 1e3 * ts, 1e3 * tv, len(sig)))


if __name__ == "__main__":
    main()
